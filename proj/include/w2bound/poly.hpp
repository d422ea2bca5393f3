#pragma once

// Dense univariate polynomials over GF(p), plus the handful of operations
// the bound pipeline needs: Euclidean arithmetic, resultants, order of
// vanishing at tower-field points, root enumeration in GF(p) and GF(p^2),
// and the numerator of f composed with a degree-1 rational map.

#include "field.hpp"

#include <algorithm>
#include <vector>

namespace w2bound {

class Poly {
public:
    Poly() = default;
    explicit Poly(Field k) : k_(std::move(k)) {}

    Poly(Field k, std::vector<i64> coeffs_ascending) : k_(std::move(k)) {
        c_.reserve(coeffs_ascending.size());
        for (i64 a : coeffs_ascending) c_.push_back(k_->reduce(a));
        trim();
    }

    static Poly zero(Field k) { return Poly(std::move(k)); }
    static Poly constant(Field k, i64 a) { return Poly(std::move(k), {a}); }
    static Poly x(Field k) { return Poly(std::move(k), {0, 1}); }
    // x - a for a in GF(p).
    static Poly linear_root(Field k, u32 a) { return Poly(k, {-i64(a), 1}); }

    static Poly from_residues(Field k, std::vector<u32> coeffs_ascending) {
        Poly g(std::move(k));
        g.c_ = std::move(coeffs_ascending);
        g.trim();
        return g;
    }

    const Field& field() const { return k_; }
    u32 p() const { return k_->p(); }
    int degree() const { return int(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    u32 coeff(int i) const { return (i >= 0 && i < int(c_.size())) ? c_[i] : 0; }
    const std::vector<u32>& coeffs() const { return c_; }
    u32 leading() const {
        if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    bool is_monic() const { return !is_zero() && c_.back() == 1; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        check(a, b);
        Poly r(a.k_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.k_->add(a.coeff(int(i)), b.coeff(int(i)));
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        check(a, b);
        Poly r(a.k_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.k_->sub(a.coeff(int(i)), b.coeff(int(i)));
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a) {
        Poly r = a;
        for (u32& v : r.c_) v = a.k_->neg(v);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        check(a, b);
        if (a.is_zero() || b.is_zero()) return Poly(a.k_ ? a.k_ : b.k_);
        Poly r(a.k_);
        r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = a.k_->add(r.c_[i + j], a.k_->mul(a.c_[i], b.c_[j]));
        r.trim();
        return r;
    }

    Poly scaled(u32 s) const {
        Poly r = *this;
        for (u32& v : r.c_) v = k_->mul(v, s);
        r.trim();
        return r;
    }

    Poly shifted(int e) const { // multiply by x^e
        if (is_zero() || e == 0) return *this;
        Poly r(k_);
        r.c_.assign(c_.size() + size_t(e), 0);
        std::copy(c_.begin(), c_.end(), r.c_.begin() + e);
        return r;
    }

    Poly monic() const {
        if (is_zero()) return *this;
        return scaled(k_->inv(leading()));
    }

    Poly derivative() const {
        Poly r(k_);
        for (size_t i = 1; i < c_.size(); ++i) r.c_.push_back(k_->mul(c_[i], u32(i % k_->p())));
        r.trim();
        return r;
    }

    std::pair<Poly, Poly> divmod(const Poly& d) const {
        check(*this, d);
        if (d.is_zero()) throw std::domain_error("polynomial division by zero");
        Poly q(k_), r = *this;
        if (degree() >= d.degree()) q.c_.assign(size_t(degree() - d.degree() + 1), 0);
        u32 lead_inv = k_->inv(d.leading());
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int shift = r.degree() - d.degree();
            u32 s = k_->mul(r.leading(), lead_inv);
            q.c_[size_t(shift)] = s;
            r = r - d.scaled(s).shifted(shift);
        }
        q.trim();
        return {q, r};
    }
    Poly operator/(const Poly& d) const { return divmod(d).first; }
    Poly operator%(const Poly& d) const { return divmod(d).second; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Evaluate at a point of GF(p^d); the result lives in the same tower field.
    FieldElement eval(const FieldElement& a) const {
        FieldElement acc = FieldElement::zero(a.field(), a.degree());
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * a + FieldElement(a.field(), i64(*it)).embedded(a.degree());
        return acc;
    }
    u32 eval_base(u32 a) const {
        u32 acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = k_->add(k_->mul(acc, a), *it);
        return acc;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool printed = false;
        for (int i = degree(); i >= 0; --i) {
            u32 v = c_[size_t(i)];
            if (v == 0) continue;
            if (printed) os << "+";
            if (i == 0) {
                os << v;
            } else {
                if (v != 1) os << v;
                os << "x";
                if (i > 1) os << "^" << i;
            }
            printed = true;
        }
        return os.str();
    }

private:
    static void check(const Poly& a, const Poly& b) {
        if (a.k_ && b.k_ && a.k_->p() != b.k_->p())
            throw std::invalid_argument("polynomial characteristic mismatch");
    }
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    Field k_;
    std::vector<u32> c_;
};

inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

// Extended gcd: returns (g, s, t) with s*a + t*b = g and g monic (or zero).
struct XgcdResult {
    Poly g, s, t;
};
inline XgcdResult poly_xgcd(const Poly& a, const Poly& b) {
    Field k = a.field() ? a.field() : b.field();
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(k, 1), s1 = Poly::zero(k);
    Poly t0 = Poly::zero(k), t1 = Poly::constant(k, 1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::move(r1); r1 = std::move(r);
        Poly s2 = s0 - q * s1; s0 = std::move(s1); s1 = std::move(s2);
        Poly t2 = t0 - q * t1; t0 = std::move(t1); t1 = std::move(t2);
    }
    if (!r0.is_zero()) {
        u32 li = k->inv(r0.leading());
        r0 = r0.scaled(li);
        s0 = s0.scaled(li);
        t0 = t0.scaled(li);
    }
    return {r0, s0, t0};
}

// Resultant via a polynomial remainder sequence. Handles the characteristic-p
// quirk where a derivative can vanish identically (then res(f, f') = 0 by
// the degree-drop rule below, matching the Sylvester determinant).
inline u32 poly_resultant(Poly a, Poly b) {
    const Field& k = a.field() ? a.field() : b.field();
    if (a.is_zero() || b.is_zero()) return 0;
    u32 acc = 1;
    while (true) {
        if (b.degree() == 0) {
            acc = k->mul(acc, k->pow(b.coeff(0), u64(a.degree())));
            return acc;
        }
        Poly r = a % b;
        if (r.is_zero()) return 0;
        // res(a,b) = (-1)^{deg a * deg b} lc(b)^{deg a - deg r} res(b, r)
        u32 sign = ((u64(a.degree()) * u64(b.degree())) % 2 == 1) ? k->neg(1) : 1;
        acc = k->mul(acc, k->mul(sign, k->pow(b.leading(), u64(a.degree() - r.degree()))));
        a = std::move(b);
        b = std::move(r);
    }
}

// Order of vanishing of g at a point of GF(p^d), computed with Hasse
// derivatives H_k(g) = sum_j C(j,k) g_j x^{j-k}, which stay meaningful in
// characteristic p where iterated derivatives can vanish spuriously.
inline int poly_ord_at(const Poly& g, const FieldElement& a) {
    if (g.is_zero()) throw std::domain_error("order of vanishing undefined for zero polynomial");
    const Field& k = g.field();
    int n = g.degree();
    // Binomial table mod p up to n.
    std::vector<std::vector<u32>> C(size_t(n + 1), std::vector<u32>(size_t(n + 1), 0));
    for (int i = 0; i <= n; ++i) {
        C[size_t(i)][0] = 1;
        for (int j = 1; j <= i; ++j)
            C[size_t(i)][size_t(j)] = k->add(C[size_t(i - 1)][size_t(j - 1)],
                                             j <= i - 1 ? C[size_t(i - 1)][size_t(j)] : 0);
    }
    for (int ord = 0; ord <= n; ++ord) {
        Poly h(k);
        std::vector<u32> hc;
        for (int j = ord; j <= n; ++j)
            hc.push_back(k->mul(g.coeff(j), C[size_t(j)][size_t(ord)]));
        h = Poly::from_residues(k, std::move(hc));
        if (!h.eval(a).is_zero()) return ord;
    }
    return n + 1; // unreachable for nonzero g of degree n
}

// All roots of g in GF(p^d) for d in {1,2}, with multiplicities, sorted by
// coordinate-lexicographic order. d = 2 returns only the roots outside GF(p).
struct PolyRoot {
    FieldElement value;
    int multiplicity;
};
inline std::vector<PolyRoot> poly_roots(const Poly& g, int d) {
    if (g.is_zero()) throw std::domain_error("root enumeration undefined for zero polynomial");
    if (d != 1 && d != 2) throw std::invalid_argument("root search degree must be 1 or 2");
    const Field& k = g.field();
    u32 p = k->p();
    std::vector<PolyRoot> roots;
    if (d == 1) {
        for (u32 x = 0; x < p; ++x)
            if (g.eval_base(x) == 0) {
                FieldElement a(k, i64(x));
                roots.push_back({a, poly_ord_at(g, a)});
            }
    } else {
        for (u32 x1 = 1; x1 < p; ++x1)
            for (u32 x0 = 0; x0 < p; ++x0) {
                FieldElement a = FieldElement::from_coords(k, 2, {i64(x0), i64(x1)});
                if (g.eval(a).is_zero()) roots.push_back({a, poly_ord_at(g, a)});
            }
        std::sort(roots.begin(), roots.end(),
                  [](const PolyRoot& a, const PolyRoot& b) { return a.value < b.value; });
    }
    return roots;
}

inline Poly poly_pow(const Poly& base, int e) {
    Poly r = Poly::constant(base.field(), 1);
    for (int i = 0; i < e; ++i) r = r * base;
    return r;
}

// Numerator of g applied to the degree-1 rational map
// x -> (num1 x + num0) / (den1 x + den0), homogenised to the given weight:
// returns sum_j g_j (num1 x + num0)^j (den1 x + den0)^(weight - j).
inline Poly rational_map_numerator(const Poly& g, u32 num1, u32 num0, u32 den1, u32 den0,
                                   int weight) {
    if (g.is_zero()) return g;
    if (weight < g.degree())
        throw std::invalid_argument("homogenisation weight below polynomial degree");
    const Field& k = g.field();
    Poly num(k, {i64(num0), i64(num1)});
    Poly den(k, {i64(den0), i64(den1)});
    // Horner in the numerator map with denominator powers tracked alongside.
    Poly acc = Poly::zero(k);
    for (int j = g.degree(); j >= 0; --j)
        acc = acc * num + Poly::constant(k, i64(g.coeff(j))) * poly_pow(den, g.degree() - j);
    return acc * poly_pow(den, weight - g.degree());
}

} // namespace w2bound
