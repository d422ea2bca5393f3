#pragma once

// Classification of the wedge form beta01 + beta02(x1+x2) + beta12*x1*x2 on
// C x C: construction from annihilator coefficient vectors, the reducibility
// trichotomy of the vanishing locus Z, the elliptic-obstruction test, and the
// polynomials F, S, G with the singular-point data of Z used by the bounds.

#include "curve.hpp"
#include "mumford.hpp"

namespace w2bound {

class WedgeForm {
public:
    // Stored normalized: the first nonzero coefficient is scaled to 1, so
    // equal projective forms compare equal and all downstream computations
    // are pinned to one representative.
    static WedgeForm from_raw(Field k, i64 b01, i64 b02, i64 b12) {
        u32 c01 = k->reduce(b01), c02 = k->reduce(b02), c12 = k->reduce(b12);
        if (c01 == 0 && c02 == 0 && c12 == 0)
            throw std::invalid_argument("wedge form is identically zero");
        u32 lead = c01 ? c01 : (c02 ? c02 : c12);
        u32 s = k->inv(lead);
        WedgeForm w;
        w.k_ = std::move(k);
        w.b01_ = w.k_->mul(c01, s);
        w.b02_ = w.k_->mul(c02, s);
        w.b12_ = w.k_->mul(c12, s);
        return w;
    }

    const Field& field() const { return k_; }
    u32 b01() const { return b01_; }
    u32 b02() const { return b02_; }
    u32 b12() const { return b12_; }

    // c = b02^2 - b01*b12; zero exactly when the form factors as
    // (b x1 + a)(b x2 + a).
    u32 disc() const { return k_->sub(k_->mul(b02_, b02_), k_->mul(b01_, b12_)); }

    // Value of the form at a pair of x-coordinates in any tower field.
    FieldElement eval_pair(const FieldElement& x1, const FieldElement& x2) const {
        FieldElement b01e(k_, i64(b01_)), b02e(k_, i64(b02_)), b12e(k_, i64(b12_));
        return b01e + b02e * (x1 + x2) + b12e * (x1 * x2);
    }

    // Moebius involution x -> (-b02 x - b01)/(b12 x + b02); defined away from
    // the pole rho = -b02/b12 (only present when b12 != 0).
    std::optional<u32> pole() const {
        if (b12_ == 0) return std::nullopt;
        return k_->mul(k_->neg(b02_), k_->inv(b12_));
    }
    FieldElement moebius(const FieldElement& x) const {
        FieldElement num = FieldElement(k_, -i64(b02_)).embedded(x.degree()) * x -
                           FieldElement(k_, i64(b01_)).embedded(x.degree());
        FieldElement den = FieldElement(k_, i64(b12_)).embedded(x.degree()) * x +
                           FieldElement(k_, i64(b02_)).embedded(x.degree());
        return num / den; // throws on division by zero at the pole
    }
    u32 moebius_base(u32 x) const {
        u32 num = k_->sub(0, k_->add(k_->mul(b02_, x), b01_));
        u32 den = k_->add(k_->mul(b12_, x), b02_);
        return k_->mul(num, k_->inv(den));
    }

    // Numerator of f(moebius(x)) homogenised to the given weight.
    Poly moebius_numerator(const Poly& f, int weight) const {
        return rational_map_numerator(f, k_->neg(b02_), k_->neg(b01_), b12_, b02_, weight);
    }

    // The diagonal restriction b12 x^2 + 2 b02 x + b01 (Z meets the diagonal
    // of C x C exactly over its roots).
    Poly diag_quadratic() const {
        return Poly(k_, {i64(b01_), i64(k_->mul(2, b02_)), i64(b12_)});
    }

    friend bool operator==(const WedgeForm& a, const WedgeForm& b) {
        return a.b01_ == b.b01_ && a.b02_ == b.b02_ && a.b12_ == b.b12_;
    }

private:
    WedgeForm() = default;
    Field k_;
    u32 b01_ = 0, b02_ = 0, b12_ = 0;
};

// The 2x2 minors of the annihilator coefficient vectors (a10,a11,a12) and
// (a20,a21,a22): beta_nm = a_1n a_2m - a_1m a_2n.
inline WedgeForm beta_from_alpha(const Field& k, const std::array<i64, 3>& a1,
                                 const std::array<i64, 3>& a2) {
    std::array<u32, 3> r1{k->reduce(a1[0]), k->reduce(a1[1]), k->reduce(a1[2])};
    std::array<u32, 3> r2{k->reduce(a2[0]), k->reduce(a2[1]), k->reduce(a2[2])};
    auto minor = [&](int n, int m) {
        return k->sub(k->mul(r1[size_t(n)], r2[size_t(m)]), k->mul(r1[size_t(m)], r2[size_t(n)]));
    };
    u32 b01 = minor(0, 1), b02 = minor(0, 2), b12 = minor(1, 2);
    if (b01 == 0 && b02 == 0 && b12 == 0)
        throw std::invalid_argument("annihilator reduces to rank < 2 mod p");
    return WedgeForm::from_raw(k, i64(b01), i64(b02), i64(b12));
}

enum class CaseKind { I, II, III, EllipticObstruction };

inline std::string case_kind_name(CaseKind c) {
    switch (c) {
        case CaseKind::I: return "I";
        case CaseKind::II: return "II";
        case CaseKind::III: return "III";
        case CaseKind::EllipticObstruction: return "elliptic_obstruction";
    }
    return "?";
}

struct CaseTag {
    CaseKind kind = CaseKind::III;
    u32 c = 0; // b02^2 - b01*b12

    // Case I: form = (b x1 + a)(b x2 + a), a and b possibly in GF(p^2);
    // P = (-a/b, sqrt(f(-a/b))) or the point at infinity when b = 0.
    FieldElement a, b;
    bool p_at_infinity = false;
    u32 x_p = 0;               // base-field x-coordinate of P when finite
    FieldElement y_p;          // canonical square root of f(x_p)
    bool y_rational = false;   // y_p lies in GF(p)
    bool root_subcase = false; // P is fixed by the involution (f(x_p)=0 or P=infinity)

    // Case II / obstruction: mobius_image = gamma * f, so gamma compares the
    // weight-8 Moebius transport of f against f itself.
    u32 gamma = 0;
    Poly mobius_image;
    std::optional<u32> sqrt_inv_gamma; // sqrt(1/gamma) in GF(p) when it exists
};

// Trichotomy of Z = V(form): Case I (form factors through a point P), Case II
// (Z reducible with irreducible image in W_2), Case III (Z irreducible), or
// the elliptic obstruction where the image acquires a genus-1 component and
// no bound can be produced.
inline CaseTag case_split(const CurveModP& C, const WedgeForm& beta) {
    const Field& k = C.field();
    CaseTag tag;
    tag.c = beta.disc();

    if (tag.c == 0) {
        tag.kind = CaseKind::I;
        if (beta.b12() == 0) {
            // Then b02 = 0 too, so the form is the constant b01 = a^2.
            tag.b = FieldElement(k, 0);
            tag.a = *sqrt_in_extension(FieldElement(k, i64(beta.b01())));
            tag.p_at_infinity = true;
            tag.root_subcase = true; // infinity is a Weierstrass point
            tag.y_rational = true;
            tag.y_p = FieldElement(k, 0);
            return tag;
        }
        tag.b = *sqrt_in_extension(FieldElement(k, i64(beta.b12())));
        tag.a = FieldElement(k, i64(beta.b02())) / tag.b.embedded(tag.b.degree());
        tag.x_p = k->mul(k->neg(beta.b02()), k->inv(beta.b12()));
        u32 fx = C.f().eval_base(tag.x_p);
        if (fx == 0) {
            tag.root_subcase = true;
            tag.y_rational = true;
            tag.y_p = FieldElement(k, 0);
        } else {
            tag.y_rational = k->is_square(fx);
            tag.y_p = *sqrt_in_extension(FieldElement(k, i64(fx)));
        }
        return tag;
    }

    Poly M = beta.moebius_numerator(C.f(), 8);
    bool reducible = false;
    u32 gamma = 0;
    if (M.degree() == 7) {
        gamma = k->mul(M.leading(), k->inv(C.f().leading()));
        reducible = (M == C.f().scaled(gamma));
    }
    if (!reducible) {
        tag.kind = CaseKind::III;
        return tag;
    }

    tag.gamma = gamma;
    tag.mobius_image = M;
    // Z splits as y1 = +-sqrt(1/gamma) y2 (b12 x1 + b02)^4; both components
    // are swap-invariant exactly when (1/gamma) c^4 = 1, and then the image
    // of Z in W_2 has a genus-1 component that defeats the jet bound.
    u32 c4 = k->pow(tag.c, 4);
    if (gamma == c4) {
        tag.kind = CaseKind::EllipticObstruction;
        return tag;
    }
    tag.kind = CaseKind::II;
    u32 inv_gamma = k->inv(gamma);
    if (k->is_square(inv_gamma)) {
        FieldElement s = *sqrt_in_extension(FieldElement(k, i64(inv_gamma)));
        tag.sqrt_inv_gamma = s.coord(0);
    }
    return tag;
}

// Data attached to Z when it is an honest curve (Cases II and III): the
// anti-invariant polynomial F, the Moebius-stable root set S of f, the
// cofactor G with F = S_poly * G, and the singular points of Z.
struct ZAnalysis {
    Poly F;              // weight-8 Moebius transport minus c^4 f; degree <= 8
    Poly S_poly;         // monic, squarefree; vanishes exactly on S
    Poly G;              // F / S_poly
    Poly diag_quad;      // b12 x^2 + 2 b02 x + b01
    int eta = 0;         // 1 iff b12 != 0 and the pole rho is a root of f
    std::optional<u32> rho;
    u32 c = 0;

    // Singular points of Z: ordered affine pairs ((xi,0),(moebius(xi),0)) for
    // xi in S, plus (infinity,infinity) when b12 = 0, plus ((rho,0),infinity)
    // and its swap when eta = 1. Only points over GF(p) and GF(p^2) are
    // listed explicitly; the closure count covers all degrees.
    std::vector<std::pair<CurvePoint, CurvePoint>> sing_z;
    int sing_z_closure_count = 0;

    // For each root xi of diag_quad over GF(p) or GF(p^2): 1 iff xi is
    // GF(p)-rational with f(xi) a nonzero square (the diagonal residue-disk
    // centers (xi, +-sqrt(f(xi))) are rational).
    std::vector<std::pair<FieldElement, int>> gamma_xi;
};

inline ZAnalysis z_analysis(const CurveModP& C, const WedgeForm& beta) {
    const Field& k = C.field();
    const Poly& f = C.f();
    ZAnalysis za;
    za.c = beta.disc();
    if (za.c == 0) throw std::invalid_argument("Z is undefined in Case I");

    Poly M = beta.moebius_numerator(f, 8);
    za.F = M - f.scaled(k->pow(za.c, 4));
    if (za.F.is_zero())
        throw std::logic_error("internal consistency error: F vanishes outside the obstruction case");
    za.diag_quad = beta.diag_quadratic();
    za.rho = beta.pole();
    za.eta = (za.rho && f.eval_base(*za.rho) == 0) ? 1 : 0;

    // S via gcd(f, M): the gcd vanishes on the roots xi of f whose Moebius
    // image is again a root, together with rho itself when eta = 1.
    Poly S_with_pole = poly_gcd(f, M);
    za.S_poly = S_with_pole;
    if (za.eta == 1) {
        auto [q, r] = S_with_pole.divmod(Poly::linear_root(k, *za.rho));
        if (!r.is_zero())
            throw std::logic_error("internal consistency error: pole missing from gcd(f, M)");
        za.S_poly = q;
    }
    auto [G, Gr] = za.F.divmod(za.S_poly);
    if (!Gr.is_zero())
        throw std::logic_error("internal consistency error: S_poly does not divide F");
    za.G = G;

    // Singular points of Z and the closure count.
    za.sing_z_closure_count = za.S_poly.degree() + (beta.b12() == 0 ? 1 : 2 * za.eta);
    for (int d = 1; d <= 2; ++d)
        for (const PolyRoot& r : poly_roots(za.S_poly, d)) {
            FieldElement xi = r.value;
            FieldElement xi2 = beta.moebius(xi);
            CurvePoint P1{false, xi, FieldElement::zero(k, xi.degree())};
            CurvePoint P2{false, xi2, FieldElement::zero(k, xi2.degree())};
            za.sing_z.push_back({P1, P2});
        }
    if (beta.b12() == 0) {
        za.sing_z.push_back({C.infinity(), C.infinity()});
    } else if (za.eta == 1) {
        CurvePoint Prho{false, FieldElement(k, i64(*za.rho)), FieldElement(k, 0)};
        za.sing_z.push_back({Prho, C.infinity()});
        za.sing_z.push_back({C.infinity(), Prho});
    }

    for (int d = 1; d <= 2; ++d)
        for (const PolyRoot& r : poly_roots(za.diag_quad, d)) {
            int flag = 0;
            if (r.value.in_base_field()) {
                u32 fx = f.eval_base(r.value.coord(0));
                if (fx != 0 && k->is_square(fx)) flag = 1;
            }
            za.gamma_xi.push_back({r.value, flag});
        }
    return za;
}

} // namespace w2bound
