#pragma once

// Reduction mod p of an odd-degree genus-3 hyperelliptic curve y^2 = f(x),
// deg f = 7, together with point enumeration over GF(p) and GF(p^2).
// Good reduction at p >= 5 means the leading coefficient stays nonzero and
// the reduced f remains squarefree, i.e. res(f, f') != 0 mod p.

#include "poly.hpp"

namespace w2bound {

struct CurvePoint {
    bool at_infinity = false;
    FieldElement x, y; // unset when at_infinity

    bool is_weierstrass() const { return !at_infinity && y.is_zero(); }

    friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
        if (a.at_infinity != b.at_infinity) return false;
        if (a.at_infinity) return true;
        return a.x == b.x && a.y == b.y;
    }
    friend bool operator!=(const CurvePoint& a, const CurvePoint& b) { return !(a == b); }
    friend bool operator<(const CurvePoint& a, const CurvePoint& b) {
        if (a.at_infinity != b.at_infinity) return a.at_infinity; // infinity sorts first
        if (a.at_infinity) return false;
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }

    std::string to_string() const {
        if (at_infinity) return "infinity";
        return "(" + x.to_string() + "," + y.to_string() + ")";
    }
};

class CurveModP {
public:
    // coeffs are the integer coefficients of f in ascending order,
    // constant term first; exactly 8 entries, x^7 coefficient last.
    static CurveModP reduce(const std::vector<i64>& coeffs, u32 p) {
        if (coeffs.size() != 8)
            throw std::invalid_argument("curve needs 8 coefficients (degree-7 f, constant first)");
        Field k = make_field(p); // rejects p < 5 and composite p
        Poly f(k, coeffs);
        if (f.degree() != 7)
            throw std::invalid_argument("bad reduction: leading coefficient vanishes mod p");
        if (poly_resultant(f, f.derivative()) == 0)
            throw std::invalid_argument("bad reduction: f has a repeated root mod p");
        return CurveModP(std::move(k), std::move(f));
    }

    const Field& field() const { return k_; }
    u32 p() const { return k_->p(); }
    const Poly& f() const { return f_; }

    CurvePoint infinity() const { return CurvePoint{true, {}, {}}; }

    CurvePoint point(const FieldElement& x, const FieldElement& y) const {
        if (f_.eval(x).embedded(y.degree()) != y * y)
            throw std::invalid_argument("point does not satisfy y^2 = f(x)");
        return CurvePoint{false, x, y};
    }

    CurvePoint involution(const CurvePoint& P) const {
        if (P.at_infinity) return P;
        return CurvePoint{false, P.x, -P.y};
    }

    // All points over GF(p^d), d in {1,2}: infinity first, then affine points
    // in (x,y) lexicographic order.
    std::vector<CurvePoint> points(int d = 1) const {
        if (d != 1 && d != 2) throw std::invalid_argument("point field degree must be 1 or 2");
        std::vector<CurvePoint> pts{infinity()};
        u32 p = k_->p();
        u64 limit = (d == 1) ? p : u64(p) * p;
        for (u64 idx = 0; idx < limit; ++idx) {
            FieldElement x = (d == 1)
                                 ? FieldElement(k_, i64(idx))
                                 : FieldElement::from_coords(k_, 2, {i64(idx % p), i64(idx / p)});
            FieldElement v = f_.eval(x);
            auto s = sqrt_in_extension(v);
            if (!s || s->degree() > d) continue;
            FieldElement y = s->embedded(d);
            if (y.is_zero()) {
                pts.push_back(CurvePoint{false, x, y});
            } else {
                FieldElement y2 = -y;
                if (y2 < y) std::swap(y, y2);
                pts.push_back(CurvePoint{false, x, y});
                pts.push_back(CurvePoint{false, x, y2});
            }
        }
        std::sort(pts.begin() + 1, pts.end());
        return pts;
    }

    u64 count_points(int d = 1) const {
        if (d < 1 || d > 3) throw std::invalid_argument("point count degree must be 1..3");
        u32 p = k_->p();
        if (d == 1) {
            u64 n = 1;
            for (u32 x = 0; x < p; ++x) {
                u32 v = f_.coeffs().empty() ? 0 : eval_base(x);
                if (v == 0) n += 1;
                else if (k_->is_square(v)) n += 2;
            }
            return n;
        }
        // Over GF(p^d), count via the quadratic character of f(x).
        u64 n = 1;
        u64 limit = 1;
        for (int i = 0; i < d; ++i) limit *= p;
        for (u64 idx = 0; idx < limit; ++idx) {
            FieldElement x = FieldElement::from_coords(
                k_, d, {i64(idx % p), i64((idx / p) % p), i64(idx / (u64(p) * p))});
            FieldElement v = f_.eval(x);
            if (v.is_zero()) n += 1;
            else if (v.is_square()) n += 2;
        }
        return n;
    }

private:
    CurveModP(Field k, Poly f) : k_(std::move(k)), f_(std::move(f)) {}
    u32 eval_base(u32 x) const { return f_.eval_base(x); }

    Field k_;
    Poly f_;
};

} // namespace w2bound
