#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <w2bound/w2bound.hpp>

#include <random>

using namespace w2bound;

namespace {
const std::vector<i64> kCurveA{64, -16, 1, 0, 0, 49, -14, 1};
const std::vector<i64> kCurveB{10, 11, -3, 19, 5, 9, -7, 1};
const std::vector<i64> kCurveC{0, -24, -80, -74, -20, -13, 0, 1};

// Every fixture curve at every sweep prime where it has good reduction.
std::vector<CurveModP> fixture_curves() {
    std::vector<CurveModP> out;
    for (u32 p : {5u, 7u, 11u, 13u})
        for (const auto& c : {kCurveA, kCurveB, kCurveC}) {
            try {
                out.push_back(CurveModP::reduce(c, p));
            } catch (const std::invalid_argument&) {
                // kCurveC picks up a repeated root mod 7; skip that pair.
            }
        }
    return out;
}

CurveModP random_good_curve(u32 p, std::mt19937& rng) {
    for (;;) {
        std::vector<i64> c;
        for (int i = 0; i < 7; ++i) c.push_back(i64(rng() % 41) - 20);
        c.push_back(1); // monic, so the leading coefficient stays a unit
        try {
            return CurveModP::reduce(c, p);
        } catch (const std::invalid_argument&) {
        }
    }
}

} // namespace

TEST_CASE("w2 count formula equals exhaustive enumeration") {
    for (const CurveModP& C : fixture_curves()) {
        u64 formula = w2_count_from_counts(C.count_points(1), C.count_points(2), C.p());
        CHECK(enumerate_w2_count(C) == formula);
    }
    std::mt19937 rng(31337);
    for (u32 p : {5u, 7u, 11u, 13u})
        for (int i = 0; i < 3; ++i) {
            CurveModP C = random_good_curve(p, rng);
            u64 formula = w2_count_from_counts(C.count_points(1), C.count_points(2), C.p());
            CHECK(enumerate_w2_count(C) == formula);
        }
}

TEST_CASE("jacobian order from zeta annihilates a hundred random classes") {
    std::mt19937 rng(0xabcd);
    std::vector<CurveModP> curves = fixture_curves();
    for (u32 p : {5u, 7u, 11u, 13u})
        for (int i = 0; i < 3; ++i) curves.push_back(random_good_curve(p, rng));
    REQUIRE(curves.size() >= 13);
    for (const CurveModP& C : curves) {
        OracleResult r = oracle_zeta_cantor(C, 100, 0x5eed);
        INFO(r.detail);
        CHECK(r.passed);
    }
    // Negative leg: a wrong order leaves some classes alive.
    CurveModP A = CurveModP::reduce(kCurveA, 7);
    DivisorClass g = enumerate_classes(A, 2).at("u=x;v=1");
    CHECK(cantor_multiple(A, g, zeta_data(A).jacobian_order - 1).is_zero() == false);
}

TEST_CASE("the oracle suite passes on all shipped fixtures") {
    struct Fixture {
        std::vector<i64> curve;
        u32 p;
        std::array<i64, 3> beta;
    };
    for (const Fixture& fx : {Fixture{kCurveA, 7, {0, 0, 1}}, Fixture{kCurveB, 5, {1, 1, 4}},
                              Fixture{kCurveC, 5, {1, 4, 3}},
                              Fixture{{1, 4, 1, 0, 0, 1, 4, 1}, 11, {0, 1, 1}}}) {
        CurveModP C = CurveModP::reduce(fx.curve, fx.p);
        WedgeForm w = WedgeForm::from_raw(C.field(), fx.beta[0], fx.beta[1], fx.beta[2]);
        BoundReport rep = compute_bound(C, w);
        for (const OracleResult& r : run_oracles(rep)) {
            INFO(r.name << ": " << r.detail);
            CHECK(r.passed);
        }
    }
}

TEST_CASE("tampered reports trip the coherence oracles") {
    // A report whose tag was computed from a different wedge form must fail
    // either the root-transport or the matrix-support cross-check.
    CurveModP B = CurveModP::reduce(kCurveB, 5);
    WedgeForm honest = WedgeForm::from_raw(B.field(), 1, 1, 4);  // reducible
    std::optional<WedgeForm> found;
    for (u32 b01 = 0; b01 < 5 && !found; ++b01)
        for (u32 b12 = 1; b12 < 5 && !found; ++b12) {
            WedgeForm cand = WedgeForm::from_raw(B.field(), i64(b01), 1, i64(b12));
            if (case_split(B, cand).kind == CaseKind::III) found = cand;
        }
    REQUIRE(found.has_value());
    WedgeForm other = *found;
    BoundReport rep = compute_bound(B, honest);
    rep.tag = case_split(B, other);
    bool some_failed = false;
    for (const OracleResult& r : run_oracles(rep)) some_failed |= !r.passed;
    CHECK(some_failed);

    // Swapping in a foreign wedge form against the stored divisor support
    // must trip the matrix-support equivalence.
    BoundReport rep2 = compute_bound(B, honest);
    rep2.beta = other;
    rep2.tag = case_split(B, other);
    bool support_failed = false;
    for (const OracleResult& r : run_oracles(rep2))
        if (r.name == "matrix-vs-divisor-support") support_failed = !r.passed;
    CHECK(support_failed);
}

TEST_CASE("composite characteristic is rejected before any oracle runs") {
    CHECK_THROWS_WITH(CurveModP::reduce(kCurveA, 15), "p is not prime");
    CHECK_THROWS_WITH(CurveModP::reduce(kCurveA, 3), "prime too small: need p >= 5");
}
