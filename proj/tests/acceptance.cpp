// Acceptance gate: runs each shipped guarantee end to end and prints one
// [PASS]/[FAIL] line per criterion. Exits nonzero if any line fails.
//
// Needs W2BOUND_BIN (path to the CLI) and W2BOUND_JOBS (path to the job
// fixtures) in the environment; ctest sets both.

#include <w2bound/w2bound.hpp>

#include "padic_cross_check.h"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

using namespace w2bound;
using nlohmann::json;

namespace {

const std::vector<std::vector<i64>> kCurves{{64, -16, 1, 0, 0, 49, -14, 1},
                                            {10, 11, -3, 19, 5, 9, -7, 1},
                                            {0, -24, -80, -74, -20, -13, 0, 1}};

std::string env_or_empty(const char* name) {
    const char* v = std::getenv(name);
    return v ? std::string(v) : std::string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    static const std::string bin = env_or_empty("W2BOUND_BIN");
    if (bin.empty()) throw std::runtime_error("W2BOUND_BIN is not set");
    std::string out_path = "/tmp/w2bound_accept_stdout";
    int rc = std::system((bin + " " + args + " > " + out_path + " 2>/dev/null").c_str());
    CliResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(out_path);
    return r;
}

std::string job_path(const std::string& file) {
    static const std::string dir = env_or_empty("W2BOUND_JOBS");
    if (dir.empty()) throw std::runtime_error("W2BOUND_JOBS is not set");
    return dir + "/" + file;
}

struct Criterion {
    std::string label;
    bool ok = true;
    std::string why;
    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    }
};

bool finish(Criterion& c, double seconds, double limit) {
    if (limit > 0 && seconds > limit)
        c.expect(false, "took " + std::to_string(seconds) + " s, limit " +
                            std::to_string(limit) + " s");
    char line[256];
    std::snprintf(line, sizeof line, "[%s] %s (%.2f s)%s%s", c.ok ? "PASS" : "FAIL",
                  c.label.c_str(), seconds, c.ok ? "" : ": ", c.ok ? "" : c.why.c_str());
    std::cout << line << "\n";
    return c.ok;
}

template <typename Body>
bool criterion(const std::string& label, double limit, Body body) {
    Criterion c{label};
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return finish(c, secs, limit);
}

std::vector<std::array<i64, 3>> normalized_triples(u32 p) {
    std::vector<std::array<i64, 3>> out;
    for (u32 b = 0; b < p; ++b)
        for (u32 c = 0; c < p; ++c) out.push_back({1, i64(b), i64(c)});
    for (u32 c = 0; c < p; ++c) out.push_back({0, 1, i64(c)});
    out.push_back({0, 0, 1});
    return out;
}

std::vector<CurveModP> good_reductions(u32 p) {
    std::vector<CurveModP> out;
    for (const auto& c : kCurves) {
        try {
            out.push_back(CurveModP::reduce(c, p));
        } catch (const std::invalid_argument&) {
        }
    }
    return out;
}

CurveModP random_good_curve(u32 p, std::mt19937& rng) {
    for (;;) {
        std::vector<i64> c;
        for (int i = 0; i < 7; ++i) c.push_back(i64(rng() % 41) - 20);
        c.push_back(1);
        try {
            return CurveModP::reduce(c, p);
        } catch (const std::invalid_argument&) {
        }
    }
}

// --------------------------------------------------------------------------
// Criterion bodies

void example_one(Criterion& c) {
    CliResult r = run_cli("run " + job_path("example1.json"));
    c.expect(r.exit_code == 0, "exit code " + std::to_string(r.exit_code));
    json doc = json::parse(r.out);
    c.expect(doc["case"] == "I", "case " + doc["case"].dump());
    c.expect(doc["case_data"]["x_p"] == 0 && doc["case_data"]["y_p"] == 1,
             "base point is not (0,1)");
    c.expect(doc["counts"]["c_points"] == 7, "c_points " + doc["counts"]["c_points"].dump());

    c.expect(doc["m_table"].size() == 13, "m_table size");
    for (const auto& [key, m] : doc["m_table"].items()) {
        int want = 1;
        if (key == "u=1;v=0") want = 4;
        if (key == "u=x^2;v=6x+1" || key == "u=x^2;v=x+6") want = 2;
        c.expect(m == want, "m(" + key + ") = " + m.dump());
    }
    for (const auto& row : doc["d_locus"]) {
        int m = row["m"].get<int>();
        int want = (m == 4) ? 5 : (m == 2) ? 3 : 2;
        c.expect(row["disk_bound"] == want, "disk_bound at " + row["class"].dump());
    }
    c.expect(doc["subgroup_intersection"]["count"] == 5, "subgroup intersection count");

    // Determinism contract: a second run is byte identical, and --json-out
    // writes exactly the bytes that went to stdout.
    CliResult again = run_cli("run " + job_path("example1.json"));
    c.expect(again.out == r.out, "stdout differs between runs");
    std::string side = "/tmp/w2bound_accept_side.json";
    run_cli("run " + job_path("example1.json") + " --json-out " + side);
    c.expect(slurp(side) == r.out, "--json-out differs from stdout");
}

void example_two(Criterion& c) {
    CliResult r = run_cli("run " + job_path("example2.json"));
    c.expect(r.exit_code == 0, "exit code " + std::to_string(r.exit_code));
    json doc = json::parse(r.out);
    c.expect(doc["case"] == "II", "case " + doc["case"].dump());
    c.expect(doc["case_data"]["gamma"] == 4, "gamma is not -1 mod 5");

    // The reducibility identity: the Moebius transport of f is -f mod 5.
    CurveModP C = CurveModP::reduce(kCurves[1], 5);
    c.expect(doc["case_data"]["mobius_image"] == C.f().scaled(4).to_string(),
             "mobius image is not -f");
    c.expect(doc["case_data"]["elliptic_check"]["fprime_rho"] == 2 &&
                 doc["case_data"]["elliptic_check"]["a7_c3"] == 3,
             "elliptic check values");
    c.expect(doc["counts"]["c_points"] == 6, "c_points");

    const json* flagged = nullptr;
    for (const auto& row : doc["d_locus"])
        if (row["class"] == "u=x+4;v=0") flagged = &row;
    c.expect(flagged != nullptr, "missing the infinity-pair class");
    if (flagged) {
        c.expect((*flagged)["m"] == 2, "flagged class m");
        c.expect((*flagged)["disk_bound"] == 3, "disk_bound(2,5) != 3");
    }
    c.expect(doc["siksek"]["origin_check"]["passes"] == true, "origin disk check failed");
}

void example_three(Criterion& c) {
    CliResult r = run_cli("run " + job_path("example3.json"));
    c.expect(r.exit_code == 0, "exit code " + std::to_string(r.exit_code));
    json doc = json::parse(r.out);
    c.expect(doc["case"] == "III", "case " + doc["case"].dump());
    c.expect(doc["z_locus"]["G"] == "2x^4+4x^3+x^2+4x+2", "G mismatch");

    std::vector<std::string> keys;
    for (const auto& row : doc["d_locus"]) keys.push_back(row["class"].get<std::string>());
    std::sort(keys.begin(), keys.end());
    c.expect(keys == std::vector<std::string>{"u=1;v=0", "u=x^2+4x;v=0", "u=x^2+x+1;v=2",
                                              "u=x^2+x+1;v=3"},
             "divisor support mismatch");
    for (const auto& row : doc["d_locus"])
        if (row["class"] == "u=x^2+4x;v=0") {
            c.expect(row["singular"] == true, "weierstrass pair not singular");
            c.expect(row["m"].get<int>() <= 2, "m cap at the singular pair");
            c.expect(row["disk_bound"] == 3, "disk_bound(2,5) != 3");
        }
    c.expect(doc["counts"]["c_points"] == 4, "c_points");
    c.expect(doc["subgroup_intersection"]["count"] == 9, "subgroup intersection count");
}

void wedge_sweep(Criterion& c) {
    for (u32 p : {5u, 7u}) {
        auto triples = normalized_triples(p);
        c.expect(triples.size() == size_t(p) * p + p + 1, "triple enumeration");
        for (const CurveModP& C : good_reductions(p)) {
            auto w2 = enumerate_classes(C, 2);
            for (const auto& t : triples) {
                WedgeForm w = WedgeForm::from_raw(C.field(), t[0], t[1], t[2]);
                CaseTag tag = case_split(C, w);
                for (i64 lam : {i64(2), i64(p) - 1}) {
                    WedgeForm ws =
                        WedgeForm::from_raw(C.field(), lam * t[0], lam * t[1], lam * t[2]);
                    CaseTag ts = case_split(C, ws);
                    c.expect(ws.b01() == w.b01() && ws.b02() == w.b02() && ws.b12() == w.b12(),
                             "scaling changed the normalized form");
                    c.expect(ts.kind == tag.kind && ts.c == tag.c && ts.gamma == tag.gamma &&
                                 ts.root_subcase == tag.root_subcase,
                             "scaling changed the case split");
                }
                c.expect(oracle_reducibility(C, w, tag).passed, "root transport disagrees");
                if (tag.kind == CaseKind::EllipticObstruction) continue;

                std::optional<ZAnalysis> za;
                if (tag.kind != CaseKind::I) za = z_analysis(C, w);
                DLocus d = enumerate_d(C, w, tag);
                fill_m_bounds(d, C, tag, za ? &*za : nullptr);
                int m_cap = (tag.kind == CaseKind::II) ? 4 : 6;
                for (const DPoint& pt : d.points)
                    c.expect(pt.m_bound >= 1 && pt.m_bound <= m_cap, "m out of range");
                if (za) {
                    int n = n_value(d, *za);
                    c.expect(n >= 0 && n <= 8, "N out of range");
                    c.expect(d.sing_count && *d.sing_count <= 5, "too many singular points");
                }
                c.expect(matrix_support_violations(C, w, d, w2) == 0,
                         "matrix/support equivalence violated");
            }
        }
    }
}

void oracle_equivalence(Criterion& c) {
    std::vector<CurveModP> curves;
    for (u32 p : {5u, 7u, 11u, 13u})
        for (const CurveModP& C : good_reductions(p)) curves.push_back(C);
    std::mt19937 rng(0xabcd);
    for (u32 p : {5u, 7u, 11u, 13u})
        for (int i = 0; i < 3; ++i) curves.push_back(random_good_curve(p, rng));
    for (const CurveModP& C : curves) {
        u64 formula = w2_count_from_counts(C.count_points(1), C.count_points(2), C.p());
        c.expect(enumerate_w2_count(C) == formula, "w2 count mismatch at p = " +
                                                       std::to_string(C.p()));
        c.expect(oracle_zeta_cantor(C, 100, 0x5eed).passed,
                 "annihilation failed at p = " + std::to_string(C.p()));
    }
}

void newton_hull(Criterion& c) {
    // The first disk series of the product-case worked example at p = 7.
    TruncatedSeries h(7, {SeriesCoeff::exact_zero(), SeriesCoeff::known(1, 5, 3),
                          SeriesCoeff::known(0, 2, 3), SeriesCoeff::known(0, 1, 3)});
    c.expect(roots_in_pZp_upper(h) == 2, "h series bound is not 2");

    // Brute-force cross-check: certified roots found by exhaustive search
    // over pZ/p^4 never exceed the hull bound.
    for (u32 p : {5u, 7u}) {
        std::mt19937 rng(99 + p);
        for (int trial = 0; trial < 120; ++trial) {
            std::vector<i64> g;
            int deg = 2 + int(rng() % 5);
            for (int i = 0; i <= deg; ++i) g.push_back(i64(rng() % 50) - 25);
            if (g.back() == 0) g.back() = 1;
            TruncatedSeries s = series_from_integers(p, g);
            c.expect(certified_roots_in_pZp(p, g) <= roots_in_pZp_upper(s),
                     "hull bound exceeded at p = " + std::to_string(p));
        }
        // Constructed quadratics (x - p a)(x - p b) with known roots in pZ.
        for (u32 a = 1; a < p; ++a)
            for (u32 b = a + 1; b < p; ++b) {
                i64 r1 = i64(p) * a, r2 = i64(p) * b;
                std::vector<i64> g{r1 * r2, -(r1 + r2), 1};
                TruncatedSeries s = series_from_integers(p, g);
                c.expect(certified_roots_in_pZp(p, g) == 2, "constructed roots missed");
                c.expect(roots_in_pZp_upper(s) >= 2, "hull bound under the exact count");
            }
    }
}

void theorem_dominance(Criterion& c) {
    for (u32 p : {11u, 13u}) {
        for (const CurveModP& C : good_reductions(p)) {
            for (const auto& t : normalized_triples(p)) {
                WedgeForm w = WedgeForm::from_raw(C.field(), t[0], t[1], t[2]);
                BoundReport r = compute_bound(C, w);
                c.expect(r.theorem_value.has_value(), "theorem bound missing");
                if (r.obstructed || !r.theorem_value) continue;
                c.expect(r.closed_form && *r.closed_form <= *r.theorem_value,
                         "closed form exceeds the theorem bound");
                c.expect(!r.closed_form_alt || *r.closed_form_alt <= *r.theorem_value,
                         "alternate closed form exceeds the theorem bound");
                c.expect(!r.closed_form_min || *r.closed_form_min <= *r.theorem_value,
                         "minimum closed form exceeds the theorem bound");
            }
        }
    }
}

void cli_contract(Criterion& c) {
    c.expect(run_cli("run " + job_path("obstruction.json")).exit_code == 2,
             "obstruction job should exit 2");
    c.expect(run_cli("run " + job_path("bad_missing_wedge.json")).exit_code == 1,
             "malformed job should exit 1");
    c.expect(run_cli("run " + job_path("bad_composite_p.json")).exit_code == 3,
             "composite p should exit 3");
    c.expect(run_cli("run " + job_path("bad_reduction.json")).exit_code == 3,
             "bad reduction should exit 3");

    for (const char* name : {"example1.json", "example2.json", "example3.json",
                             "obstruction.json"}) {
        CliResult v = run_cli("verify " + job_path(name));
        c.expect(v.exit_code == 0, std::string("verify failed on ") + name);
        json doc = json::parse(v.out);
        c.expect(doc["all_passed"] == true, std::string("oracle failed on ") + name);
    }

    // The TOML job reproduces the JSON run (it omits the known points, so
    // only the subgroup block differs).
    CliResult toml = run_cli("run " + job_path("example3.toml"));
    CliResult js = run_cli("run " + job_path("example3.json"));
    c.expect(toml.exit_code == 0, "toml job failed");
    json td = json::parse(toml.out), jd = json::parse(js.out);
    c.expect(td["case"] == jd["case"] && td["counts"] == jd["counts"] &&
                 td["bounds"] == jd["bounds"] && td["m_table"] == jd["m_table"],
             "toml report disagrees with json report");
    c.expect(td["subgroup_intersection"].is_null(), "toml job has no known points");
}

} // namespace

int main() {
    bool all = true;
    all &= criterion("1 example-one-product-case", 1.0, example_one);
    all &= criterion("2 example-two-reducible-case", 1.0, example_two);
    all &= criterion("3 example-three-irreducible-case", 1.0, example_three);
    all &= criterion("4 exhaustive-wedge-sweep", 60.0, wedge_sweep);
    all &= criterion("5 oracle-equivalence", 30.0, oracle_equivalence);
    all &= criterion("6 newton-hull-cross-check", 0.0, newton_hull);
    all &= criterion("7 theorem-bound-dominance", 0.0, theorem_dominance);
    all &= criterion("8 cli-contract", 0.0, cli_contract);
    std::cout << (all ? "acceptance: all criteria pass" : "acceptance: FAILURES above") << "\n";
    return all ? 0 : 1;
}
