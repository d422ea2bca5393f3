#pragma once

// Final assembly: per-residue-disk point counts from the jet bounds, the
// closed-form bounds of the three cases, the prime-only headline bound, and
// compute_bound gluing the whole pipeline into one report structure.

#include "dlocus.hpp"

#include <cmath>

namespace w2bound {

// Number of rational points a single residue disk can hold when the jet
// bound at its center is m: floor((p-1)m/(p-2)) + 1. The estimate needs
// m < p to apply.
inline u64 disk_bound(int m, u32 p) {
    if (m < 0) throw std::invalid_argument("negative jet bound");
    if (u32(m) >= p) throw std::invalid_argument("prime too small for this disk");
    return u64(m) + 1 + u64(m) / (p - 2);
}

inline u64 ceil_sqrt_u64(u64 n) {
    u64 s = u64(std::sqrt(double(n)));
    while (s * s > n) --s;
    while ((s + 1) * (s + 1) <= n) ++s;
    return s + (s * s < n ? 1 : 0);
}

// Headline bound w2_count + 2p + ceil(12 sqrt(p)) + 7, valid for primes
// p >= 11 of good reduction.
inline u64 theorem_bound(u32 p, u64 w2_count) {
    if (!is_prime_u32(p)) throw std::invalid_argument("theorem bound needs a prime p");
    if (p < 11) throw std::invalid_argument("theorem bound requires p >= 11");
    return w2_count + 2 * u64(p) + ceil_sqrt_u64(144 * u64(p)) + 7;
}

// #W_2(F_p) from point counts alone: rational points of Sym^2 C are rational
// pairs plus conjugate pairs, and the p+1 hyperelliptic pairs all collapse
// onto the origin.
inline u64 w2_count_from_counts(u64 n1, u64 n2, u32 p) {
    u64 sym2_twice = n1 * n1 + n2;
    if (sym2_twice % 2 != 0)
        throw std::logic_error("internal consistency error: odd symmetric-square pair count");
    u64 sym = sym2_twice / 2;
    if (sym < p) throw std::logic_error("internal consistency error: symmetric square too small");
    return sym - p;
}

struct BoundReport {
    BoundReport(CurveModP curve, WedgeForm wedge) : C(std::move(curve)), beta(std::move(wedge)) {}

    CurveModP C;
    WedgeForm beta;
    u32 p = 0;
    CaseTag tag;
    std::optional<ZAnalysis> za; // Cases II and III
    std::optional<DLocus> d;     // absent in the obstruction case

    u64 c_count = 0;  // #C(F_p)
    u64 c2_count = 0; // #C(F_{p^2})
    u64 w2_count = 0; // #W_2(F_p)
    std::optional<int> n_value_opt;
    std::optional<int> sing_d_count; // Cases II and III

    bool obstructed = false;
    std::optional<u64> refined_bound;   // absent when some disk needs a larger p
    std::optional<u64> closed_form;     // per-case formula
    std::optional<u64> closed_form_alt; // second formula where one is proved
    std::optional<u64> closed_form_min;
    std::optional<u64> theorem_value;   // absent for p < 11
    u64 sqrt_ceiling = 0;               // ceil(12 sqrt(p)) when theorem_value is set
    std::vector<std::string> warnings;
};

inline BoundReport compute_bound(const CurveModP& C, const WedgeForm& beta) {
    BoundReport r(C, beta);
    const u32 p = C.p();
    r.p = p;
    r.tag = case_split(C, beta);
    r.c_count = C.count_points(1);
    r.c2_count = C.count_points(2);
    r.w2_count = w2_count_from_counts(r.c_count, r.c2_count, p);

    if (p >= 11) {
        r.sqrt_ceiling = ceil_sqrt_u64(144 * u64(p));
        r.theorem_value = theorem_bound(p, r.w2_count);
        r.warnings.push_back("theorem bound rounds 12*sqrt(p) up to the next integer");
    }

    if (r.tag.kind == CaseKind::EllipticObstruction) {
        r.obstructed = true;
        r.warnings.push_back(
            "elliptic obstruction: the wedge divisor has a genus-1 component, no bound produced");
        return r;
    }

    if (r.tag.kind != CaseKind::I) r.za = z_analysis(C, beta);
    r.d = enumerate_d(C, beta, r.tag);
    fill_m_bounds(*r.d, C, r.tag, r.za ? &*r.za : nullptr);
    if (r.tag.kind == CaseKind::III) {
        r.n_value_opt = n_value(*r.d, *r.za);
        r.d->n_value = r.n_value_opt;
    }
    r.sing_d_count = r.d->sing_count;

    bool disks_apply = true;
    u64 extra = 0;
    for (const DPoint& q : r.d->points) {
        if (u32(q.m_bound) >= p) {
            disks_apply = false;
            r.warnings.push_back("prime too small for this disk: m(" + q.cls.key() + ") = " +
                                 std::to_string(q.m_bound));
            continue;
        }
        extra += disk_bound(q.m_bound, p) - 1;
    }
    if (disks_apply) r.refined_bound = r.w2_count + extra;

    const u64 d_count = r.d->points.size();
    switch (r.tag.kind) {
        case CaseKind::I:
            r.closed_form = r.w2_count + 2 * r.c_count + 4;
            if (!r.tag.root_subcase && r.tag.y_rational)
                r.closed_form_alt = r.w2_count + 2 * r.c_count + 2;
            break;
        case CaseKind::II:
            r.closed_form = r.w2_count + 2 * r.c_count + 4;
            r.closed_form_alt = r.w2_count + 2 * d_count + 2;
            break;
        case CaseKind::III:
            r.closed_form = r.w2_count + d_count + u64(*r.sing_d_count) + u64(*r.n_value_opt);
            break;
        case CaseKind::EllipticObstruction:
            break;
    }
    r.closed_form_min = *r.closed_form;
    if (r.closed_form_alt && *r.closed_form_alt < *r.closed_form_min)
        r.closed_form_min = r.closed_form_alt;
    return r;
}

} // namespace w2bound
