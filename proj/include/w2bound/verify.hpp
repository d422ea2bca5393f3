#pragma once

// Independent cross-checks of the pipeline: each oracle recomputes a
// quantity along a second route and compares. The CLI `verify` verb runs the
// whole suite; the test binaries call the pieces directly.

#include "bounds.hpp"
#include "siksek.hpp"
#include "zeta.hpp"

#include <random>

namespace w2bound {

struct OracleResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Largest p for which brute-force class enumeration stays cheap.
inline constexpr u32 kEnumerationPrimeCap = 31;

inline u64 enumerate_w2_count(const CurveModP& C) { return enumerate_classes(C, 2).size(); }

// Cross-link: the residue-disk matrix is singular at a class exactly when
// the class lies in the enumerated divisor support. Returns the number of
// classes violating the equivalence.
inline int matrix_support_violations(const CurveModP& C, const WedgeForm& beta, const DLocus& d,
                                     const std::map<std::string, DivisorClass>& w2_classes) {
    AnnihilatorBasis ann = basis_from_beta(beta);
    int bad = 0;
    for (const auto& [key, cls] : w2_classes) {
        bool in_d = d.find(key) != nullptr;
        if (cls.weight() == 0) {
            // The matrix at a hyperelliptic pair is singular by the involution
            // antisymmetry, so the origin must always sit in the support.
            if (!in_d) ++bad;
            continue;
        }
        auto [P1, P2] = class_support(C, cls);
        DiskVerdict v = siksek_matrix(C, ann, P1, P2);
        if (v.clears == in_d) ++bad;
    }
    return bad;
}

// Reducibility via a second route: divide the weight-8 Moebius transport by
// f and inspect the remainder, then spot-check that low-degree roots of f
// transport into roots again.
inline bool reducibility_oracle(const CurveModP& C, const WedgeForm& beta, std::string* why) {
    const Poly& f = C.f();
    Poly M = beta.moebius_numerator(f, 8);
    auto [q, r] = M.divmod(f);
    bool divisible = r.is_zero() && M.degree() <= 7;
    if (divisible) {
        std::optional<u32> rho = beta.pole();
        if (rho && f.eval_base(*rho) != 0) {
            if (why) *why = "transport divisible by f yet the pole is not a root";
            return false;
        }
        for (int d = 1; d <= 2; ++d)
            for (const PolyRoot& root : poly_roots(f, d)) {
                if (rho && root.value.in_base_field() && root.value.coord(0) == *rho) continue;
                if (!f.eval(beta.moebius(root.value)).is_zero()) {
                    if (why) *why = "root of f with non-root Moebius image";
                    return false;
                }
            }
    }
    return divisible;
}

inline OracleResult oracle_w2_count(const CurveModP& C) {
    OracleResult r{"w2-count-formula", false, ""};
    u64 formula = w2_count_from_counts(C.count_points(1), C.count_points(2), C.p());
    if (C.p() > kEnumerationPrimeCap) {
        r.passed = true;
        r.detail = "enumeration skipped above p = " + std::to_string(kEnumerationPrimeCap) +
                   "; formula value " + std::to_string(formula);
        return r;
    }
    u64 enumerated = enumerate_w2_count(C);
    r.passed = (enumerated == formula);
    r.detail = "enumerated " + std::to_string(enumerated) + ", formula " + std::to_string(formula);
    return r;
}

inline OracleResult oracle_zeta_cantor(const CurveModP& C, int samples, u32 seed) {
    OracleResult r{"zeta-cantor-annihilation", false, ""};
    ZetaData zd = zeta_data(C);
    auto pts = C.points(1);
    std::mt19937 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, pts.size() - 1);
    for (int i = 0; i < samples; ++i) {
        DivisorClass g = class_of_pair(C, pts[pick(rng)], pts[pick(rng)]);
        if (i % 2 == 1) // mix in weight-3 elements
            g = cantor_add(C, g, class_of_pair(C, pts[pick(rng)], pts[pick(rng)]));
        if (!cantor_multiple(C, g, zd.jacobian_order).is_zero()) {
            r.detail = "group order does not annihilate " + g.key();
            return r;
        }
    }
    r.passed = true;
    r.detail = std::to_string(samples) + " samples annihilated by order " +
               std::to_string(zd.jacobian_order);
    return r;
}

inline OracleResult oracle_reducibility(const CurveModP& C, const WedgeForm& beta,
                                        const CaseTag& tag) {
    OracleResult r{"moebius-root-transport", false, ""};
    if (tag.kind == CaseKind::I) {
        r.passed = true;
        r.detail = "not applicable: the wedge form is a product";
        return r;
    }
    std::string why;
    bool oracle_reducible = reducibility_oracle(C, beta, &why);
    bool split_reducible =
        (tag.kind == CaseKind::II || tag.kind == CaseKind::EllipticObstruction);
    r.passed = (oracle_reducible == split_reducible) && why.empty();
    r.detail = r.passed ? (oracle_reducible ? "reducible on both routes" : "irreducible on both routes")
                        : (why.empty() ? "routes disagree" : why);
    return r;
}

inline OracleResult oracle_matrix_support(const CurveModP& C, const WedgeForm& beta,
                                          const CaseTag& tag, const DLocus* d) {
    OracleResult r{"matrix-vs-divisor-support", false, ""};
    if (tag.kind == CaseKind::EllipticObstruction || d == nullptr) {
        r.passed = true;
        r.detail = "not applicable: no divisor support in the obstruction case";
        return r;
    }
    if (C.p() > kEnumerationPrimeCap) {
        r.passed = true;
        r.detail = "skipped above p = " + std::to_string(kEnumerationPrimeCap);
        return r;
    }
    auto w2 = enumerate_classes(C, 2);
    int bad = matrix_support_violations(C, beta, *d, w2);
    r.passed = (bad == 0);
    r.detail = std::to_string(bad) + " violations over " + std::to_string(w2.size()) + " classes";
    return r;
}

inline OracleResult oracle_caps(const CaseTag& tag, const DLocus* d, u32 p) {
    OracleResult r{"jet-and-locus-caps", false, ""};
    if (d == nullptr) {
        r.passed = true;
        r.detail = "not applicable: no divisor support in the obstruction case";
        return r;
    }
    int cap = (tag.kind == CaseKind::II) ? 4 : 6;
    for (const DPoint& q : d->points)
        if (q.m_bound < 0 || q.m_bound > cap) {
            r.detail = "jet bound " + std::to_string(q.m_bound) + " at " + q.cls.key();
            return r;
        }
    if (d->sing_count && (*d->sing_count < 0 || *d->sing_count > 5)) {
        r.detail = "singular-point count " + std::to_string(*d->sing_count) + " out of range";
        return r;
    }
    if (d->n_value && (*d->n_value < 0 || *d->n_value > 8)) {
        r.detail = "N = " + std::to_string(*d->n_value) + " out of range";
        return r;
    }
    if (tag.kind != CaseKind::I) {
        u64 weil = u64(p) + ceil_sqrt_u64(144 * u64(p)) + 1;
        if (d->points.size() > weil) {
            r.detail = "divisor support larger than its Weil bound";
            return r;
        }
    }
    r.passed = true;
    r.detail = "caps hold over " + std::to_string(d->points.size()) + " classes";
    return r;
}

inline std::vector<OracleResult> run_oracles(const BoundReport& rep) {
    std::vector<OracleResult> out;
    out.push_back(oracle_w2_count(rep.C));
    out.push_back(oracle_zeta_cantor(rep.C, 20, 0x5eed));
    out.push_back(oracle_reducibility(rep.C, rep.beta, rep.tag));
    out.push_back(oracle_matrix_support(rep.C, rep.beta, rep.tag, rep.d ? &*rep.d : nullptr));
    out.push_back(oracle_caps(rep.tag, rep.d ? &*rep.d : nullptr, rep.p));
    return out;
}

} // namespace w2bound
