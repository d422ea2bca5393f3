#pragma once

// Enumeration of the GF(p)-rational points of the wedge divisor D inside
// W_2, their singularity and delta flags, the per-class jet bound m(x), and
// the Case III correction term N.

#include "wedge.hpp"

#include <cassert>

namespace w2bound {

enum class Provenance { Origin, AffinePair, InfinityPair, Diagonal };

inline std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Origin: return "origin";
        case Provenance::AffinePair: return "affine_pair";
        case Provenance::InfinityPair: return "infinity_pair";
        case Provenance::Diagonal: return "diagonal";
    }
    return "?";
}

struct DPoint {
    DivisorClass cls;
    Provenance prov = Provenance::Origin;
    bool singular = false;
    int delta = -1;  // 0/1 for pair points in Cases II/III, -1 where not defined
    int m_bound = 0;
    CurvePoint P1, P2; // one Z-point mapping to this class
};

struct DLocus {
    CaseKind kind = CaseKind::III;
    std::vector<DPoint> points;      // unique classes, sorted by key
    std::optional<int> n_value;      // Case III only
    std::optional<int> sing_count;   // #Sing(D)(F_p); Cases II and III

    const DPoint* find(const std::string& key) const {
        for (const DPoint& q : points)
            if (q.cls.key() == key) return &q;
        return nullptr;
    }
};

namespace detail {

// delta flag of a Z-point ((a1,b1),(a2,b2)): whether
// (b12 a2 + b02)^4 b1 = (b02^2 - b01 b12)^2 b2; symmetric in the two points.
inline int delta_flag(const WedgeForm& beta, const CurvePoint& P1, const CurvePoint& P2) {
    const Field& k = beta.field();
    int d = std::max(P1.x.degree(), P2.y.degree());
    d = std::max(d, std::max(P2.x.degree(), P1.y.degree()));
    FieldElement den2 = FieldElement(k, i64(beta.b12())).embedded(d) * P2.x.embedded(d) +
                        FieldElement(k, i64(beta.b02())).embedded(d);
    FieldElement lhs = den2.pow(4) * P1.y.embedded(d);
    FieldElement rhs = FieldElement(k, i64(k->mul(beta.disc(), beta.disc()))).embedded(d) *
                       P2.y.embedded(d);
    return lhs == rhs ? 1 : 0;
}

inline void insert_point(std::map<std::string, DPoint>& out, DPoint q) {
    auto it = out.find(q.cls.key());
    if (it == out.end()) out.emplace(q.cls.key(), std::move(q));
}

} // namespace detail

// D(F_p) as a set of divisor classes with provenance. Case I takes the tag's
// point P; Cases II and III take the Moebius pairing from the wedge form.
inline DLocus enumerate_d(const CurveModP& C, const WedgeForm& beta, const CaseTag& tag) {
    const Field& k = C.field();
    const Poly& f = C.f();
    u32 p = C.p();
    DLocus d;
    d.kind = tag.kind;
    if (tag.kind == CaseKind::EllipticObstruction)
        throw std::invalid_argument("D enumeration refused in the elliptic obstruction case");

    std::map<std::string, DPoint> out;

    DPoint origin;
    origin.cls = DivisorClass::zero(k);
    origin.prov = Provenance::Origin;
    origin.P1 = C.infinity();
    origin.P2 = C.infinity();

    if (tag.kind == CaseKind::I) {
        // D = C_P + C_{iota(P)}: classes [(R)+(P)-2(infinity)].
        origin.singular = false;
        detail::insert_point(out, origin);
        if (tag.y_rational) {
            CurvePoint P = tag.p_at_infinity
                               ? C.infinity()
                               : C.point(FieldElement(k, i64(tag.x_p)), tag.y_p);
            for (const CurvePoint& R : C.points(1))
                for (const CurvePoint& Q : {P, C.involution(P)}) {
                    DPoint q;
                    q.cls = class_of_pair(C, R, Q);
                    q.P1 = R;
                    q.P2 = Q;
                    if (q.cls.is_zero()) continue;
                    if (R.at_infinity || Q.at_infinity)
                        q.prov = Provenance::InfinityPair;
                    else if (R == Q)
                        q.prov = Provenance::Diagonal;
                    else
                        q.prov = Provenance::AffinePair;
                    detail::insert_point(out, std::move(q));
                }
        }
        for (auto& [key, q] : out) d.points.push_back(q);
        return d;
    }

    // Cases II and III share the pairing x2 = moebius(x1).
    origin.singular = true; // Z meets the antidiagonal, so 0_J is a node of D
    detail::insert_point(out, origin);
    bool case3 = (tag.kind == CaseKind::III);
    std::optional<u32> rho = beta.pole();

    // Rational affine pairs and rational diagonal points.
    for (u32 x1 = 0; x1 < p; ++x1) {
        if (rho && x1 == *rho) continue;
        u32 x2 = beta.moebius_base(x1);
        if (x2 < x1) continue; // unordered pair seen from the smaller side
        u32 f1 = f.eval_base(x1), f2 = f.eval_base(x2);
        if (x1 == x2) {
            // Diagonal point of Z over a rational root of the diagonal quadratic.
            if (f1 == 0 || !k->is_square(f1)) continue; // Weierstrass diagonal is 0_J
            FieldElement y = *sqrt_in_extension(FieldElement(k, i64(f1)));
            for (const FieldElement& yy : {y, -y}) {
                DPoint q;
                CurvePoint P{false, FieldElement(k, i64(x1)), yy};
                q.cls = class_of_pair(C, P, P);
                q.prov = Provenance::Diagonal;
                q.delta = 1;
                q.P1 = P;
                q.P2 = P;
                detail::insert_point(out, std::move(q));
            }
            continue;
        }
        // Off-diagonal: y-signs must pair into Galois-stable divisors, which
        // over GF(p) just means both y's are rational.
        if (!k->is_square(f1) || !k->is_square(f2)) continue;
        FieldElement y1 = *sqrt_in_extension(FieldElement(k, i64(f1)));
        FieldElement y2 = *sqrt_in_extension(FieldElement(k, i64(f2)));
        std::vector<std::pair<FieldElement, FieldElement>> sign_choices;
        if (y1.is_zero() && y2.is_zero()) {
            sign_choices = {{y1, y2}};
        } else if (y1.is_zero() || y2.is_zero()) {
            sign_choices = {{y1, y2}, {y1.is_zero() ? y1 : -y1, y2.is_zero() ? y2 : -y2}};
        } else {
            sign_choices = {{y1, y2}, {y1, -y2}, {-y1, y2}, {-y1, -y2}};
        }
        for (auto& [s1, s2] : sign_choices) {
            DPoint q;
            CurvePoint P1{false, FieldElement(k, i64(x1)), s1};
            CurvePoint P2{false, FieldElement(k, i64(x2)), s2};
            q.cls = class_of_pair(C, P1, P2);
            q.prov = Provenance::AffinePair;
            q.delta = detail::delta_flag(beta, P1, P2);
            q.singular = case3 && s1.is_zero() && s2.is_zero();
            q.P1 = P1;
            q.P2 = P2;
            detail::insert_point(out, std::move(q));
        }
    }

    // Conjugate pairs: x over GF(p^2) \ GF(p) paired with its Frobenius image.
    for (u32 c1 = 1; c1 < p; ++c1)
        for (u32 c0 = 0; c0 < p; ++c0) {
            FieldElement x = FieldElement::from_coords(k, 2, {i64(c0), i64(c1)});
            FieldElement xbar = x.frobenius();
            if (!(x < xbar)) continue; // canonical representative
            if (!beta.eval_pair(x, xbar).is_zero()) continue;
            FieldElement fx = f.eval(x);
            if (fx.is_zero()) {
                DPoint q;
                CurvePoint P1{false, x, FieldElement::zero(k, 2)};
                CurvePoint P2{false, xbar, FieldElement::zero(k, 2)};
                q.cls = class_of_pair(C, P1, P2);
                q.prov = Provenance::AffinePair;
                q.delta = 1;
                q.singular = case3;
                q.P1 = P1;
                q.P2 = P2;
                detail::insert_point(out, std::move(q));
                continue;
            }
            auto y = sqrt_in_extension(fx);
            if (!y || y->degree() > 2) continue; // y only exists over GF(p^4)
            for (const FieldElement& yy : {*y, -*y}) {
                DPoint q;
                CurvePoint P1{false, x, yy};
                CurvePoint P2{false, xbar, yy.frobenius()};
                q.cls = class_of_pair(C, P1, P2);
                q.prov = Provenance::AffinePair;
                q.delta = detail::delta_flag(beta, P1, P2);
                q.P1 = P1;
                q.P2 = P2;
                detail::insert_point(out, std::move(q));
            }
        }

    // Points of Z with one coordinate at infinity: classes [Q - infinity]
    // over Q = (rho, +-sqrt(f(rho))).
    if (rho) {
        u32 frho = f.eval_base(*rho);
        if (frho == 0) {
            DPoint q;
            CurvePoint P{false, FieldElement(k, i64(*rho)), FieldElement(k, 0)};
            q.cls = class_of_pair(C, P, C.infinity());
            q.prov = Provenance::InfinityPair;
            q.singular = case3; // the Z-point ((rho,0), infinity) is singular
            q.P1 = P;
            q.P2 = C.infinity();
            detail::insert_point(out, std::move(q));
        } else if (k->is_square(frho)) {
            FieldElement y = *sqrt_in_extension(FieldElement(k, i64(frho)));
            for (const FieldElement& yy : {y, -y}) {
                DPoint q;
                CurvePoint P{false, FieldElement(k, i64(*rho)), yy};
                q.cls = class_of_pair(C, P, C.infinity());
                q.prov = Provenance::InfinityPair;
                q.P1 = P;
                q.P2 = C.infinity();
                detail::insert_point(out, std::move(q));
            }
        }
    }

    for (auto& [key, q] : out) d.points.push_back(q);
    int sing = 0;
    for (const DPoint& q : d.points) sing += q.singular ? 1 : 0;
    d.sing_count = sing;
    return d;
}

// Per-class jet bounds. Case I and II values are fixed small tables; Case III
// reads orders of vanishing of F off the singular-locus data.
inline void fill_m_bounds(DLocus& d, const CurveModP& C, const CaseTag& tag,
                          const ZAnalysis* za) {
    const Field& k = C.field();
    int cap = (tag.kind == CaseKind::II) ? 4 : 6;

    for (DPoint& q : d.points) {
        int m = 0;
        switch (tag.kind) {
            case CaseKind::I: {
                if (tag.root_subcase) {
                    m = q.cls.is_zero() ? 6 : 2;
                } else if (!tag.y_rational) {
                    m = q.cls.is_zero() ? 4 : 1;
                } else {
                    CurvePoint P = C.point(FieldElement(k, i64(tag.x_p)), tag.y_p);
                    std::string dbl_p = class_of_pair(C, P, P).key();
                    std::string dbl_ip = class_of_pair(C, C.involution(P), C.involution(P)).key();
                    if (q.cls.is_zero()) m = 4;
                    else if (q.cls.key() == dbl_p || q.cls.key() == dbl_ip) m = 2;
                    else m = 1;
                }
                break;
            }
            case CaseKind::II:
                m = q.cls.is_zero() ? 4 : 2;
                break;
            case CaseKind::III: {
                if (za == nullptr)
                    throw std::invalid_argument("Case III jet bounds require the Z analysis");
                switch (q.prov) {
                    case Provenance::Origin:
                        m = 2;
                        break;
                    case Provenance::Diagonal: {
                        int ord = poly_ord_at(za->F, q.P1.x);
                        if (ord % 2 != 1)
                            throw std::logic_error(
                                "internal consistency error: even vanishing order at a diagonal point");
                        m = (ord - 1) / 2 + 1;
                        break;
                    }
                    case Provenance::AffinePair: {
                        int ord = poly_ord_at(za->F, q.P1.x);
                        m = q.singular ? (ord - 1) + 2 : q.delta * ord + 1;
                        break;
                    }
                    case Provenance::InfinityPair: {
                        if (q.singular) {
                            int ord = poly_ord_at(za->F, q.P1.x);
                            m = (ord - 1) + 2;
                        } else {
                            m = 1;
                        }
                        break;
                    }
                }
                break;
            }
            case CaseKind::EllipticObstruction:
                throw std::invalid_argument("no jet bounds in the elliptic obstruction case");
        }
        if (m > cap)
            throw std::logic_error("internal consistency error: jet bound exceeds the case cap");
        q.m_bound = m;
    }
}

// The Case III correction term
//   N = sum over off-diagonal pair classes with delta = 1 of ord_{a1} G
//     + eta (ord_rho G - 1)
//     + (1/2) sum over diagonal-quadratic roots xi of gamma_xi (ord_xi G - 1).
inline int n_value(const DLocus& d, const ZAnalysis& za) {
    int total2 = 0; // accumulate twice N to keep everything integral
    for (const DPoint& q : d.points) {
        if (q.prov != Provenance::AffinePair || q.delta != 1) continue;
        total2 += 2 * poly_ord_at(za.G, q.P1.x);
    }
    if (za.eta == 1) {
        if (!za.rho) throw std::logic_error("internal consistency error: eta set without a pole");
        int ord = poly_ord_at(za.G, FieldElement(za.G.field(), i64(*za.rho)));
        total2 += 2 * (ord - 1);
    }
    for (const auto& [xi, flag] : za.gamma_xi) {
        if (flag == 0) continue;
        int ord = poly_ord_at(za.G, xi);
        if ((ord - 1) % 2 != 0)
            throw std::logic_error("internal consistency error: odd half-sum term in N");
        total2 += ord - 1;
    }
    if (total2 % 2 != 0) throw std::logic_error("internal consistency error: N is not an integer");
    int n = total2 / 2;
    if (n < 0 || n > 8)
        throw std::logic_error("internal consistency error: N outside [0, 8]");
    return n;
}

} // namespace w2bound
