#pragma once

// Truncated p-adic series with per-coefficient precision, Newton polygons,
// and upper bounds on roots of positive valuation. Coefficients carry their
// exact valuation and leading residue when known, or only an O(p^k) bound.

#include "field.hpp"

#include <limits>
#include <numeric>

namespace w2bound {

enum class CoeffState { ExactZero, Known, Bounded };

struct SeriesCoeff {
    CoeffState state = CoeffState::ExactZero;
    i64 valuation = 0; // Known: exact valuation; Bounded: the O(p^valuation) exponent
    u32 unit = 0;      // Known: leading residue mod p (nonzero)
    i64 precision = 0; // Known: coefficient known modulo p^precision

    static SeriesCoeff exact_zero() { return {}; }
    static SeriesCoeff known(i64 v, u32 u, i64 prec) {
        if (v >= prec)
            throw std::invalid_argument("series coefficient valuation at or beyond its precision");
        SeriesCoeff c;
        c.state = CoeffState::Known;
        c.valuation = v;
        c.unit = u;
        c.precision = prec;
        return c;
    }
    static SeriesCoeff bounded(i64 k) {
        SeriesCoeff c;
        c.state = CoeffState::Bounded;
        c.valuation = k;
        c.precision = k;
        return c;
    }
};

struct TruncatedSeries {
    u32 p = 0;
    std::vector<SeriesCoeff> coeffs; // index 0 = constant term

    TruncatedSeries(u32 prime, std::vector<SeriesCoeff> c) : p(prime), coeffs(std::move(c)) {
        if (!is_prime_u32(p)) throw std::invalid_argument("series needs a prime p");
        for (const SeriesCoeff& sc : coeffs)
            if (sc.state == CoeffState::Known && sc.unit % p == 0)
                throw std::invalid_argument("series coefficient has unit divisible by p");
    }
};

// Exact series of an integer polynomial: every coefficient has a definite
// valuation and unit, with a precision horizon far beyond any use here.
inline TruncatedSeries series_from_integers(u32 p, const std::vector<i64>& coeffs) {
    const i64 horizon = 64;
    std::vector<SeriesCoeff> out;
    for (i64 c : coeffs) {
        if (c == 0) {
            out.push_back(SeriesCoeff::exact_zero());
            continue;
        }
        u64 a = c < 0 ? u64(-c) : u64(c);
        i64 v = 0;
        while (a % p == 0) {
            a /= p;
            ++v;
        }
        i64 unit_signed = (c < 0 ? -i64(a) : i64(a)) % i64(p);
        if (unit_signed < 0) unit_signed += p;
        out.push_back(SeriesCoeff::known(v, u32(unit_signed), horizon));
    }
    return TruncatedSeries(p, std::move(out));
}

// Sum with pessimistic precision tracking: a leading-residue cancellation
// only yields a valuation lower bound, so the result degrades to O(p^{v+1}).
inline SeriesCoeff coeff_add(u32 p, const SeriesCoeff& a, const SeriesCoeff& b) {
    if (a.state == CoeffState::ExactZero) return b;
    if (b.state == CoeffState::ExactZero) return a;
    if (a.state == CoeffState::Known && b.state == CoeffState::Known) {
        i64 prec = std::min(a.precision, b.precision);
        if (a.valuation != b.valuation) {
            const SeriesCoeff& low = a.valuation < b.valuation ? a : b;
            if (low.valuation < prec) return SeriesCoeff::known(low.valuation, low.unit, prec);
            return SeriesCoeff::bounded(prec);
        }
        u32 u = (a.unit + b.unit) % p;
        if (u != 0 && a.valuation < prec) return SeriesCoeff::known(a.valuation, u, prec);
        return SeriesCoeff::bounded(std::min(prec, a.valuation + 1));
    }
    if (a.state == CoeffState::Bounded && b.state == CoeffState::Bounded)
        return SeriesCoeff::bounded(std::min(a.valuation, b.valuation));
    const SeriesCoeff& kn = a.state == CoeffState::Known ? a : b;
    const SeriesCoeff& bd = a.state == CoeffState::Known ? b : a;
    if (kn.valuation < bd.valuation)
        return SeriesCoeff::known(kn.valuation, kn.unit, std::min(kn.precision, bd.valuation));
    return SeriesCoeff::bounded(bd.valuation);
}

inline TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.p != b.p) throw std::invalid_argument("series sum needs matching primes");
    std::vector<SeriesCoeff> out;
    size_t n = std::max(a.coeffs.size(), b.coeffs.size());
    for (size_t i = 0; i < n; ++i) {
        SeriesCoeff ca = i < a.coeffs.size() ? a.coeffs[i] : SeriesCoeff::exact_zero();
        SeriesCoeff cb = i < b.coeffs.size() ? b.coeffs[i] : SeriesCoeff::exact_zero();
        out.push_back(coeff_add(a.p, ca, cb));
    }
    return TruncatedSeries(a.p, std::move(out));
}

// Multiplication by a p-adic unit with known residue u0: valuations are
// untouched, leading residues scale.
inline TruncatedSeries series_unit_scale(const TruncatedSeries& s, u32 u0) {
    if (u0 % s.p == 0) throw std::invalid_argument("unit scale needs a residue prime to p");
    std::vector<SeriesCoeff> out;
    for (const SeriesCoeff& c : s.coeffs) {
        if (c.state == CoeffState::Known)
            out.push_back(SeriesCoeff::known(c.valuation, u32((u64(c.unit) * u0) % s.p), c.precision));
        else
            out.push_back(c);
    }
    return TruncatedSeries(s.p, std::move(out));
}

// One lower-hull segment of the Newton polygon: slope rise/run in lowest
// terms, horizontal length, and whether an endpoint is only an O(p^k) bound
// (then the true polygon may differ and conclusions from it are unsafe).
struct PolygonSegment {
    i64 slope_num = 0;
    i64 slope_den = 1;
    i64 length = 0;
    bool indeterminate = false;
};

inline std::vector<PolygonSegment> newton_polygon(const TruncatedSeries& s, size_t max_index) {
    struct Pt {
        i64 x, y;
        bool uncertain;
    };
    std::vector<Pt> pts;
    bool any_known = false;
    for (size_t i = 0; i < s.coeffs.size() && i <= max_index; ++i) {
        const SeriesCoeff& c = s.coeffs[i];
        if (c.state == CoeffState::ExactZero) continue;
        pts.push_back({i64(i), c.valuation, c.state == CoeffState::Bounded});
        any_known |= (c.state == CoeffState::Known);
    }
    if (!any_known)
        throw std::invalid_argument("newton polygon needs an exactly known coefficient");

    std::vector<Pt> hull;
    for (const Pt& q : pts) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull[hull.size() - 1];
            // Drop b when it lies on or above the segment a-q.
            if ((b.y - a.y) * (q.x - a.x) >= (q.y - a.y) * (b.x - a.x))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(q);
    }

    std::vector<PolygonSegment> segs;
    for (size_t i = 0; i + 1 < hull.size(); ++i) {
        PolygonSegment seg;
        i64 run = hull[i + 1].x - hull[i].x;
        i64 rise = hull[i + 1].y - hull[i].y;
        i64 g = std::gcd(run < 0 ? -run : run, rise < 0 ? -rise : rise);
        if (g == 0) g = 1;
        seg.slope_num = rise / g;
        seg.slope_den = run / g;
        seg.length = run;
        seg.indeterminate = hull[i].uncertain || hull[i + 1].uncertain;
        segs.push_back(seg);
    }
    return segs;
}

// Upper bound on the number of roots of valuation >= 1 (counted with
// multiplicity over the completed algebraic closure, so in particular on
// roots in pZ_p). Tilting by one makes those roots the Weierstrass part:
// with d = min over exactly known coefficients of val(c_i) + i, every such
// root count is at most max{ i : lb(c_i) + i <= d }. The series tail beyond
// the supplied coefficients must satisfy val(c_n) + n > d; for the Coleman
// series used here that holds once the horizon exceeds d.
inline int roots_in_pZp_upper(const TruncatedSeries& s) {
    i64 d = std::numeric_limits<i64>::max();
    bool have_known = false;
    for (size_t i = 0; i < s.coeffs.size(); ++i) {
        const SeriesCoeff& c = s.coeffs[i];
        if (c.state != CoeffState::Known) continue;
        have_known = true;
        d = std::min(d, c.valuation + i64(i));
    }
    if (!have_known)
        throw std::runtime_error("inconclusive: no coefficient with exactly known valuation");
    int upper = 0;
    for (size_t i = 0; i < s.coeffs.size(); ++i) {
        const SeriesCoeff& c = s.coeffs[i];
        if (c.state == CoeffState::ExactZero) continue;
        if (c.valuation + i64(i) <= d) upper = int(i);
    }
    return upper;
}

} // namespace w2bound
