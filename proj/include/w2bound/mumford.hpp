#pragma once

// Mumford representation of divisor classes on the Jacobian of y^2 = f(x),
// deg f = 7: pairs (u, v) with u monic, deg v < deg u, and u | v^2 - f.
// Degree deg u <= 3 covers the whole Jacobian; deg u <= 2 is exactly the
// image W_2 of the second symmetric power of the curve.

#include "curve.hpp"

#include <map>
#include <set>

namespace w2bound {

class DivisorClass {
public:
    DivisorClass() = default;
    DivisorClass(Poly u, Poly v) : u_(std::move(u)), v_(std::move(v)) {}

    static DivisorClass zero(const Field& k) {
        return DivisorClass(Poly::constant(k, 1), Poly::zero(k));
    }

    const Poly& u() const { return u_; }
    const Poly& v() const { return v_; }
    bool is_zero() const { return u_.degree() == 0; }
    int weight() const { return u_.degree(); }

    bool is_valid(const Poly& f) const {
        if (u_.is_zero() || !u_.is_monic()) return false;
        if (u_.degree() > 3) return false;
        if (!v_.is_zero() && v_.degree() >= u_.degree()) return false;
        return ((v_ * v_ - f) % u_).is_zero();
    }

    DivisorClass negated() const {
        return DivisorClass(u_, (-v_) % u_);
    }

    std::string key() const { return "u=" + u_.to_string() + ";v=" + v_.to_string(); }

    friend bool operator==(const DivisorClass& a, const DivisorClass& b) {
        return a.u_ == b.u_ && a.v_ == b.v_;
    }
    friend bool operator!=(const DivisorClass& a, const DivisorClass& b) { return !(a == b); }
    friend bool operator<(const DivisorClass& a, const DivisorClass& b) {
        return a.key() < b.key();
    }

private:
    Poly u_, v_;
};

// The class [P1 + P2 - 2*infinity] (with points at infinity dropping the
// corresponding term). Inputs may be GF(p)- or GF(p^2)-points; the resulting
// class must be GF(p)-rational or this throws.
inline DivisorClass class_of_pair(const CurveModP& C, const CurvePoint& P1, const CurvePoint& P2) {
    const Field& k = C.field();
    if (P1.at_infinity && P2.at_infinity) return DivisorClass::zero(k);
    if (P1.at_infinity || P2.at_infinity) {
        const CurvePoint& P = P1.at_infinity ? P2 : P1;
        if (!P.x.in_base_field() || !P.y.in_base_field())
            throw std::invalid_argument("divisor class not rational over GF(p)");
        Poly u = Poly::linear_root(k, P.x.base_value());
        Poly v = Poly::constant(k, i64(P.y.base_value()));
        return DivisorClass(std::move(u), std::move(v));
    }

    if (P1.x == P2.x && P2.y == -P1.y) return DivisorClass::zero(k); // hyperelliptic fibre

    if (P1.x == P2.x) {
        // Doubled non-Weierstrass point: tangent line.
        if (!P1.x.in_base_field() || !P1.y.in_base_field())
            throw std::invalid_argument("divisor class not rational over GF(p)");
        u32 a = P1.x.base_value(), b = P1.y.base_value();
        Poly xa = Poly::linear_root(k, a);
        Poly u = xa * xa;
        u32 slope = k->mul(C.f().derivative().eval_base(a), k->inv(k->mul(2, b)));
        // v = b + slope (x - a), already of degree < 2
        Poly v = Poly(k, {i64(k->sub(b, k->mul(slope, a))), i64(slope)});
        return DivisorClass(std::move(u), std::move(v));
    }

    // Two distinct x-coordinates: u from trace and norm, v the chord.
    FieldElement s = P1.x + P2.x, m = P1.x * P2.x;
    FieldElement lambda = (P2.y - P1.y) / (P2.x - P1.x);
    FieldElement v0 = P1.y - lambda * P1.x;
    if (!s.in_base_field() || !m.in_base_field() || !lambda.in_base_field() || !v0.in_base_field())
        throw std::invalid_argument("divisor class not rational over GF(p)");
    Poly u = Poly(k, {i64(m.coord(0)), i64(k->neg(s.coord(0))), 1});
    Poly v = Poly(k, {i64(v0.coord(0)), i64(lambda.coord(0))});
    return DivisorClass(std::move(u), std::move(v));
}

// Cantor composition and reduction for genus 3.
inline DivisorClass cantor_add(const CurveModP& C, const DivisorClass& D1, const DivisorClass& D2) {
    const Field& k = C.field();
    const Poly& f = C.f();
    const Poly &u1 = D1.u(), &v1 = D1.v(), &u2 = D2.u(), &v2 = D2.v();

    auto g1 = poly_xgcd(u1, u2);                 // d1 = e1 u1 + e2 u2
    auto g2 = poly_xgcd(g1.g, v1 + v2);          // d = c1 d1 + c2 (v1 + v2)
    const Poly& d = g2.g;

    auto [u, ur] = (u1 * u2).divmod(d * d);
    if (!ur.is_zero()) throw std::logic_error("internal consistency error: composition gcd does not divide");
    Poly num = g2.s * g1.s * u1 * v2 + g2.s * g1.t * u2 * v1 + g2.t * (v1 * v2 + f);
    auto [v, vr] = num.divmod(d);
    if (!vr.is_zero()) throw std::logic_error("internal consistency error: composition numerator not divisible");
    v = v % u;

    while (u.degree() > 3) {
        auto [u_next, rr] = (f - v * v).divmod(u);
        if (!rr.is_zero()) throw std::logic_error("internal consistency error: reduction step not exact");
        u = u_next.monic();
        v = (-v) % u;
    }
    u = u.monic();
    v = v % u;
    return DivisorClass(std::move(u), std::move(v));
}

inline DivisorClass cantor_multiple(const CurveModP& C, const DivisorClass& D, u64 n) {
    DivisorClass acc = DivisorClass::zero(C.field()), base = D;
    while (n) {
        if (n & 1) acc = cantor_add(C, acc, base);
        base = cantor_add(C, base, base);
        n >>= 1;
    }
    return acc;
}

// All GF(p)-rational classes of weight <= max_weight, keyed canonically.
inline std::map<std::string, DivisorClass> enumerate_classes(const CurveModP& C, int max_weight) {
    if (max_weight < 0 || max_weight > 3)
        throw std::invalid_argument("class enumeration weight must be 0..3");
    const Field& k = C.field();
    const Poly& f = C.f();
    u32 p = C.p();
    std::map<std::string, DivisorClass> out;
    out.emplace(DivisorClass::zero(k).key(), DivisorClass::zero(k));

    // Weight 1: u = x - a, v = b with b^2 = f(a).
    if (max_weight >= 1)
        for (u32 a = 0; a < p; ++a) {
            u32 fa = f.eval_base(a);
            for (u32 b = 0; b < p; ++b)
                if (k->mul(b, b) == fa) {
                    DivisorClass D(Poly::linear_root(k, a), Poly::constant(k, i64(b)));
                    out.emplace(D.key(), D);
                }
        }

    auto scan_monic = [&](int w) {
        // Enumerate monic u of degree w and all v of degree < w.
        u64 u_count = 1, v_count = 1;
        for (int i = 0; i < w; ++i) { u_count *= p; v_count *= p; }
        for (u64 ui = 0; ui < u_count; ++ui) {
            std::vector<i64> uc(size_t(w + 1), 0);
            u64 t = ui;
            for (int i = 0; i < w; ++i) { uc[size_t(i)] = i64(t % p); t /= p; }
            uc[size_t(w)] = 1;
            Poly u(k, uc);
            for (u64 vi = 0; vi < v_count; ++vi) {
                std::vector<i64> vc(size_t(w), 0);
                u64 tv = vi;
                for (int i = 0; i < w; ++i) { vc[size_t(i)] = i64(tv % p); tv /= p; }
                Poly v(k, vc);
                DivisorClass D(u, v);
                if (D.is_valid(f)) out.emplace(D.key(), D);
            }
        }
    };
    for (int w = 2; w <= max_weight; ++w) scan_monic(w);
    return out;
}

// Smallest subgroup of J(GF(p)) containing the generators, with a hard cap
// to catch runaway arithmetic (cap defaults to the Weil upper bound).
inline std::map<std::string, DivisorClass>
subgroup_generated(const CurveModP& C, const std::vector<DivisorClass>& gens, u64 cap = 0) {
    if (cap == 0) {
        u64 r = 1, p = C.p();
        u32 s = 0;
        while (u64(s + 1) * (s + 1) <= p) ++s; // floor sqrt
        for (int i = 0; i < 6; ++i) r *= (u64(s) + 2);
        cap = r;
    }
    std::map<std::string, DivisorClass> closure;
    DivisorClass z = DivisorClass::zero(C.field());
    closure.emplace(z.key(), z);
    std::vector<DivisorClass> frontier{z};
    while (!frontier.empty()) {
        std::vector<DivisorClass> next;
        for (const DivisorClass& e : frontier)
            for (const DivisorClass& g : gens) {
                for (const DivisorClass& step : {cantor_add(C, e, g), cantor_add(C, e, g.negated())}) {
                    if (closure.emplace(step.key(), step).second) next.push_back(step);
                    if (closure.size() > cap)
                        throw std::logic_error("internal consistency error: subgroup closure exceeded group bound");
                }
            }
        frontier = std::move(next);
    }
    return closure;
}

} // namespace w2bound
