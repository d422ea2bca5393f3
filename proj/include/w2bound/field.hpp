#pragma once

// Exact arithmetic in GF(p), GF(p^2) and GF(p^3) for odd primes p < 2^16.
// Extensions use fixed defining polynomials chosen deterministically per p,
// so element coordinates are reproducible across runs.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace w2bound {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline bool is_prime_u32(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Immutable per-prime context: the prime, a quadratic nonresidue n for
// GF(p^2) = GF(p)[t]/(t^2 - n), and a monic irreducible cubic for GF(p^3).
class PrimeField {
public:
    explicit PrimeField(u32 p) : p_(p) {
        if (p < 5) throw std::invalid_argument("prime too small: need p >= 5");
        if (!is_prime_u32(p)) throw std::invalid_argument("p is not prime");
        if (p >= (1u << 16)) throw std::invalid_argument("p too large: need p < 2^16");
        nonresidue_ = find_nonresidue();
        cubic_ = find_cubic();
    }

    u32 p() const { return p_; }
    u32 quad_nonresidue() const { return nonresidue_; }
    // Monic cubic x^3 + c[2] x^2 + c[1] x + c[0], irreducible over GF(p).
    const std::array<u32, 3>& cubic() const { return cubic_; }

    u32 add(u32 a, u32 b) const { u64 s = u64(a) + b; return u32(s >= p_ ? s - p_ : s); }
    u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p_ - b; }
    u32 neg(u32 a) const { return a == 0 ? 0 : p_ - a; }
    u32 mul(u32 a, u32 b) const { return u32((u64(a) * b) % p_); }
    u32 pow(u32 a, u64 e) const {
        u64 r = 1, base = a % p_;
        while (e) {
            if (e & 1) r = (r * base) % p_;
            base = (base * base) % p_;
            e >>= 1;
        }
        return u32(r);
    }
    u32 inv(u32 a) const {
        if (a == 0) throw std::domain_error("division by zero in GF(p)");
        return pow(a, p_ - 2);
    }
    u32 reduce(i64 a) const {
        i64 r = a % i64(p_);
        if (r < 0) r += p_;
        return u32(r);
    }
    // Quadratic character on GF(p): 0, 1 or p-1 (for -1).
    u32 chi(u32 a) const { return a == 0 ? 0 : pow(a, (p_ - 1) / 2); }
    bool is_square(u32 a) const { return a == 0 || chi(a) == 1; }

private:
    u32 find_nonresidue() const {
        for (u32 n = 2; n < p_; ++n)
            if (chi(n) == p_ - 1) return n;
        throw std::logic_error("no quadratic nonresidue found");
    }
    bool cubic_has_root(u32 c0, u32 c1, u32 c2) const {
        for (u32 x = 0; x < p_; ++x) {
            u32 v = add(mul(add(mul(add(x, c2), x), c1), x), c0);
            if (v == 0) return true;
        }
        return false;
    }
    std::array<u32, 3> find_cubic() const {
        // Prefer a binomial x^3 - m; for p = 2 mod 3 none exists, so fall
        // back to the first rootless x^3 + c1 x + c0 in lexicographic order.
        for (u32 m = 2; m < p_; ++m)
            if (!cubic_has_root(neg(m), 0, 0)) return {neg(m), 0, 0};
        for (u32 c1 = 0; c1 < p_; ++c1)
            for (u32 c0 = 1; c0 < p_; ++c0)
                if (!cubic_has_root(c0, c1, 0)) return {c0, c1, 0};
        throw std::logic_error("no irreducible cubic found");
    }

    u32 p_;
    u32 nonresidue_;
    std::array<u32, 3> cubic_;
};

using Field = std::shared_ptr<const PrimeField>;

inline Field make_field(u32 p) { return std::make_shared<const PrimeField>(p); }

// An element of GF(p^deg) for deg in {1,2,3}, stored as coordinates over the
// fixed basis {1, t, t^2}. Elements of different towers never mix except that
// GF(p) embeds into either extension.
class FieldElement {
public:
    FieldElement() : deg_(1), c_{0, 0, 0} {}

    FieldElement(Field k, i64 value) : k_(std::move(k)), deg_(1), c_{0, 0, 0} {
        c_[0] = k_->reduce(value);
    }

    static FieldElement from_coords(Field k, int deg, const std::vector<i64>& coords) {
        if (deg < 1 || deg > 3) throw std::invalid_argument("field degree must be 1, 2 or 3");
        FieldElement e;
        e.k_ = std::move(k);
        e.deg_ = deg;
        for (int i = 0; i < deg && i < int(coords.size()); ++i)
            e.c_[i] = e.k_->reduce(coords[i]);
        return e;
    }

    static FieldElement zero(Field k, int deg = 1) { return from_coords(std::move(k), deg, {}); }
    static FieldElement one(Field k, int deg = 1) { return from_coords(std::move(k), deg, {1}); }
    // The generator t of the extension of the given degree.
    static FieldElement gen(Field k, int deg) { return from_coords(std::move(k), deg, {0, 1}); }

    const Field& field() const { return k_; }
    u32 p() const { return k_->p(); }
    int degree() const { return deg_; }
    u32 coord(int i) const { return c_[i]; }
    const std::array<u32, 3>& coords() const { return c_; }

    bool is_zero() const { return c_[0] == 0 && c_[1] == 0 && c_[2] == 0; }
    // True when the element lies in the prime field regardless of its ambient degree.
    bool in_base_field() const { return c_[1] == 0 && c_[2] == 0; }

    u32 base_value() const {
        if (!in_base_field()) throw std::domain_error("element not in GF(p)");
        return c_[0];
    }

    FieldElement embedded(int deg) const {
        if (deg == deg_) return *this;
        if (deg_ == 1) {
            FieldElement e = *this;
            e.deg_ = deg;
            return e;
        }
        if (in_base_field()) {
            FieldElement e = *this;
            e.deg_ = deg;
            return e;
        }
        throw std::domain_error("cannot embed between incompatible extensions");
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        auto [x, y] = align(a, b);
        FieldElement r = x;
        for (int i = 0; i < 3; ++i) r.c_[i] = x.k_->add(x.c_[i], y.c_[i]);
        return r;
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        auto [x, y] = align(a, b);
        FieldElement r = x;
        for (int i = 0; i < 3; ++i) r.c_[i] = x.k_->sub(x.c_[i], y.c_[i]);
        return r;
    }
    friend FieldElement operator-(const FieldElement& a) {
        FieldElement r = a;
        for (int i = 0; i < 3; ++i) r.c_[i] = a.k_->neg(a.c_[i]);
        return r;
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        auto [x, y] = align(a, b);
        const PrimeField& K = *x.k_;
        FieldElement r = x;
        if (x.deg_ == 1) {
            r.c_ = {K.mul(x.c_[0], y.c_[0]), 0, 0};
        } else if (x.deg_ == 2) {
            u32 n = K.quad_nonresidue();
            u32 a0 = x.c_[0], a1 = x.c_[1], b0 = y.c_[0], b1 = y.c_[1];
            r.c_ = {K.add(K.mul(a0, b0), K.mul(n, K.mul(a1, b1))),
                    K.add(K.mul(a0, b1), K.mul(a1, b0)), 0};
        } else {
            // Schoolbook product then reduction by the defining cubic.
            std::array<u32, 5> prod{0, 0, 0, 0, 0};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    prod[i + j] = K.add(prod[i + j], K.mul(x.c_[i], y.c_[j]));
            const auto& m = K.cubic();
            for (int i = 4; i >= 3; --i) {
                u32 lead = prod[i];
                if (lead == 0) continue;
                prod[i] = 0;
                // t^i = t^(i-3) * (-(m2 t^2 + m1 t + m0))
                prod[i - 1] = K.sub(prod[i - 1], K.mul(lead, m[2]));
                prod[i - 2] = K.sub(prod[i - 2], K.mul(lead, m[1]));
                prod[i - 3] = K.sub(prod[i - 3], K.mul(lead, m[0]));
            }
            r.c_ = {prod[0], prod[1], prod[2]};
        }
        return r;
    }

    FieldElement pow(u64 e) const {
        FieldElement r = one(k_, deg_), base = *this;
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }

    u64 field_order() const {
        u64 q = k_->p();
        for (int i = 1; i < deg_; ++i) q *= k_->p();
        return q;
    }

    FieldElement inverse() const {
        if (is_zero()) throw std::domain_error("division by zero in GF(p^d)");
        return pow(field_order() - 2);
    }

    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        return a * b.inverse();
    }

    FieldElement frobenius() const {
        if (deg_ == 1) return *this;
        if (deg_ == 2) {
            // Conjugation: t^p = -t since t^2 is a nonresidue.
            FieldElement r = *this;
            r.c_[1] = k_->neg(r.c_[1]);
            return r;
        }
        return pow(k_->p());
    }

    bool is_square() const {
        if (is_zero()) return true;
        return pow((field_order() - 1) / 2) == one(k_, deg_);
    }

    // Smallest representative in coordinate-lexicographic order among {s,-s}.
    FieldElement canonical_sign() const {
        FieldElement m = -*this;
        return lex_less(c_, m.c_) ? *this : m;
    }

    // Collapse a base-field value embedded in an extension back to degree 1.
    FieldElement lowered() const {
        if (!in_base_field()) throw std::domain_error("element not in GF(p)");
        FieldElement r = *this;
        r.deg_ = 1;
        return r;
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.p() == b.p() && a.c_ == b.c_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
    friend bool operator<(const FieldElement& a, const FieldElement& b) {
        return lex_less(a.c_, b.c_);
    }

    std::string to_string() const {
        std::ostringstream os;
        bool printed = false;
        for (int i = 2; i >= 0; --i) {
            if (c_[i] == 0) continue;
            if (printed) os << "+";
            if (i == 0) {
                os << c_[i];
            } else {
                if (c_[i] != 1) os << c_[i] << "*";
                os << (i == 1 ? "t" : "t^2");
            }
            printed = true;
        }
        if (!printed) os << "0";
        return os.str();
    }

private:
    static bool lex_less(const std::array<u32, 3>& a, const std::array<u32, 3>& b) {
        for (int i = 0; i < 3; ++i) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    }

    static std::pair<FieldElement, FieldElement> align(const FieldElement& a, const FieldElement& b) {
        if (a.p() != b.p()) throw std::invalid_argument("field characteristic mismatch");
        if (a.deg_ == b.deg_) return {a, b};
        int d = std::max(a.deg_, b.deg_);
        return {a.embedded(d), b.embedded(d)};
    }

    Field k_;
    int deg_;
    std::array<u32, 3> c_;
};

// Square root of a in the smallest supported tower field containing it.
// For a in GF(p) a root always exists in GF(p) or GF(p^2); for a in GF(p^2)
// the root may only live in GF(p^4), which is outside the tower, in which
// case nothing is returned. The returned root is sign-canonical.
inline std::optional<FieldElement> sqrt_in_extension(const FieldElement& a) {
    const Field& k = a.field();
    const PrimeField& K = *k;
    u32 p = K.p();
    if (a.is_zero()) return FieldElement::zero(k, a.degree());

    if (a.in_base_field()) {
        u32 v = a.coord(0);
        if (K.is_square(v)) {
            for (u32 s = 0; s < p; ++s)
                if (K.mul(s, s) == v)
                    return FieldElement(k, s).embedded(a.degree()).canonical_sign();
        }
        if (a.degree() == 3)
            return std::nullopt; // nonsquare in GF(p^3) has no root in the tower
        // Root lives in GF(p^2): s = s1*t with n*s1^2 = v.
        u32 target = K.mul(v, K.inv(K.quad_nonresidue()));
        for (u32 s1 = 1; s1 < p; ++s1)
            if (K.mul(s1, s1) == target)
                return FieldElement::from_coords(k, 2, {0, i64(s1)}).canonical_sign();
        return std::nullopt;
    }

    if (a.degree() == 2) {
        // Solve (x0 + x1 t)^2 = a0 + a1 t with a1 != 0: 2 x0 x1 = a1.
        u32 n = K.quad_nonresidue(), a0 = a.coord(0), a1 = a.coord(1);
        for (u32 x1 = 1; x1 < p; ++x1) {
            u32 x0 = K.mul(a1, K.inv(K.mul(2, x1)));
            if (K.add(K.mul(x0, x0), K.mul(n, K.mul(x1, x1))) == a0)
                return FieldElement::from_coords(k, 2, {i64(x0), i64(x1)}).canonical_sign();
        }
        return std::nullopt;
    }

    // Generic degree-3 element: exhaustive scan is too big; use the character
    // to decide and a Tonelli-free search over multiples. Degree-3 square
    // roots are not needed by the bound pipeline; keep a simple exact scan.
    if (!a.is_square()) return std::nullopt;
    u64 q = a.field_order();
    // (q+1)/4 exponent works when q = 3 mod 4; otherwise fall back to scan.
    if (q % 4 == 3) {
        FieldElement s = a.pow((q + 1) / 4);
        if (s * s == a) return s.canonical_sign();
    }
    for (u64 i0 = 0; i0 < K.p(); ++i0)
        for (u64 i1 = 0; i1 < K.p(); ++i1)
            for (u64 i2 = 0; i2 < K.p(); ++i2) {
                FieldElement s = FieldElement::from_coords(k, 3, {i64(i0), i64(i1), i64(i2)});
                if (s * s == a) return s.canonical_sign();
            }
    return std::nullopt;
}

} // namespace w2bound
