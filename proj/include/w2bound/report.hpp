#pragma once

// Job-file parsing (JSON or a small TOML subset), reduction of known
// rational divisor classes mod p, and the versioned JSON report emitted by
// the CLI. All emission uses ordered maps and sorted class lists so a job
// produces byte-identical output on every run.

#include "bounds.hpp"
#include "siksek.hpp"
#include "verify.hpp"
#include "zeta.hpp"

#include <json.hpp>

namespace w2bound {

using ordered_json = nlohmann::ordered_json;

struct JobSpec {
    u32 p = 0;
    std::vector<i64> curve; // 8 coefficients, constant term first
    std::optional<std::array<i64, 3>> beta;
    std::optional<std::array<std::array<i64, 3>, 2>> alpha;
    // Raw coefficient strings (integers or fractions) of known divisor
    // classes over Q, reduced mod p for the subgroup-intersection block.
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> known_points;
};

// ---------------------------------------------------------------------------
// Rational coefficient strings

inline std::pair<i64, i64> parse_rational(const std::string& s) {
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return {std::stoll(s), 1};
        return {std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational coefficient: " + s);
    }
}

inline u32 reduce_rational(const Field& k, const std::string& s) {
    auto [num, den] = parse_rational(s);
    if (den == 0) throw std::invalid_argument("rational coefficient with zero denominator");
    u32 d = k->reduce(den);
    if (d == 0)
        throw std::invalid_argument("known point has a denominator divisible by p: " + s);
    return k->mul(k->reduce(num), k->inv(d));
}

inline DivisorClass reduce_known_point(const CurveModP& C, const std::vector<std::string>& u_str,
                                       const std::vector<std::string>& v_str) {
    const Field& k = C.field();
    std::vector<u32> uc, vc;
    for (const std::string& s : u_str) uc.push_back(reduce_rational(k, s));
    for (const std::string& s : v_str) vc.push_back(reduce_rational(k, s));
    Poly u = Poly::from_residues(k, uc);
    Poly v = Poly::from_residues(k, vc);
    if (u.is_zero()) throw std::invalid_argument("known point with zero u-polynomial");
    u = u.monic();
    v = v % u;
    DivisorClass cls(u, v);
    if (!cls.is_valid(C.f()))
        throw std::invalid_argument("known point does not reduce to a divisor class on the curve");
    return cls;
}

// ---------------------------------------------------------------------------
// Job files

namespace detail {

inline std::vector<std::string> coeff_strings(const nlohmann::json& arr, const char* what) {
    if (!arr.is_array()) throw std::invalid_argument(std::string("expected an array for ") + what);
    std::vector<std::string> out;
    for (const auto& e : arr) {
        if (e.is_number_integer())
            out.push_back(std::to_string(e.get<i64>()));
        else if (e.is_string())
            out.push_back(e.get<std::string>());
        else
            throw std::invalid_argument(std::string("coefficients of ") + what +
                                        " must be integers or rational strings");
    }
    return out;
}

inline std::array<i64, 3> int_triple(const nlohmann::json& arr, const char* what) {
    if (!arr.is_array() || arr.size() != 3)
        throw std::invalid_argument(std::string(what) + " needs exactly 3 integers");
    std::array<i64, 3> out{};
    for (size_t i = 0; i < 3; ++i) {
        if (!arr[i].is_number_integer())
            throw std::invalid_argument(std::string(what) + " needs exactly 3 integers");
        out[i] = arr[i].get<i64>();
    }
    return out;
}

} // namespace detail

inline JobSpec job_from_json(const nlohmann::json& j) {
    JobSpec job;
    if (!j.is_object()) throw std::invalid_argument("job file must hold one object");
    if (!j.contains("p") || !j["p"].is_number_integer() || j["p"].get<i64>() < 2)
        throw std::invalid_argument("job needs an integer field p >= 2");
    job.p = u32(j["p"].get<i64>());
    if (!j.contains("curve") || !j["curve"].is_array() || j["curve"].size() != 8)
        throw std::invalid_argument("job needs a curve array of 8 integer coefficients");
    for (const auto& e : j["curve"]) {
        if (!e.is_number_integer())
            throw std::invalid_argument("curve coefficients must be integers");
        job.curve.push_back(e.get<i64>());
    }
    bool has_beta = j.contains("beta"), has_alpha = j.contains("alpha");
    if (has_beta == has_alpha)
        throw std::invalid_argument("job needs exactly one of beta or alpha");
    if (has_beta) job.beta = detail::int_triple(j["beta"], "beta");
    if (has_alpha) {
        const auto& a = j["alpha"];
        if (!a.is_array() || a.size() != 2)
            throw std::invalid_argument("alpha needs two coefficient vectors");
        job.alpha = {detail::int_triple(a[0], "alpha[0]"), detail::int_triple(a[1], "alpha[1]")};
    }
    if (j.contains("known_points")) {
        if (!j["known_points"].is_array())
            throw std::invalid_argument("known_points must be an array");
        for (const auto& kp : j["known_points"]) {
            if (!kp.is_object() || !kp.contains("u") || !kp.contains("v"))
                throw std::invalid_argument("each known point needs u and v arrays");
            job.known_points.push_back(
                {detail::coeff_strings(kp["u"], "u"), detail::coeff_strings(kp["v"], "v")});
        }
    }
    return job;
}

// Minimal TOML subset: `key = value` lines where value is an integer or a
// (possibly nested) array of integers; # starts a comment. Known points are
// only accepted in JSON jobs.
inline JobSpec job_from_toml(const std::string& text) {
    nlohmann::json j = nlohmann::json::object();
    size_t pos = 0;
    auto parse_value = [&](const std::string& s, size_t& i, auto&& self) -> nlohmann::json {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i >= s.size()) throw std::invalid_argument("toml value missing");
        if (s[i] == '[') {
            ++i;
            nlohmann::json arr = nlohmann::json::array();
            while (true) {
                while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
                if (i >= s.size()) throw std::invalid_argument("toml array not closed");
                if (s[i] == ']') {
                    ++i;
                    return arr;
                }
                arr.push_back(self(s, i, self));
            }
        }
        size_t start = i;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '-' || s[i] == '+')) ++i;
        if (start == i) throw std::invalid_argument("toml value is not an integer or array");
        return nlohmann::json(std::stoll(s.substr(start, i - start)));
    };
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string line = text.substr(pos, eol - pos);
        pos = eol + 1;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            for (char ch : line)
                if (!std::isspace(static_cast<unsigned char>(ch)))
                    throw std::invalid_argument("toml line without key = value: " + line);
            continue;
        }
        std::string key = line.substr(0, eq);
        key.erase(std::remove_if(key.begin(), key.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
                  key.end());
        if (key.empty()) throw std::invalid_argument("toml line with empty key");
        size_t i = 0;
        std::string rest = line.substr(eq + 1);
        j[key] = parse_value(rest, i, parse_value);
        while (i < rest.size()) {
            if (!std::isspace(static_cast<unsigned char>(rest[i])))
                throw std::invalid_argument("trailing characters after toml value");
            ++i;
        }
    }
    return job_from_json(j);
}

// ---------------------------------------------------------------------------
// Report assembly

namespace detail {

inline ordered_json opt_u64(const std::optional<u64>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}
inline ordered_json opt_int(const std::optional<int>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

inline ordered_json element_json(const FieldElement& e) {
    if (e.in_base_field()) return ordered_json(e.base_value());
    return ordered_json(e.to_string());
}

inline ordered_json point_pair_json(const CurvePoint& P1, const CurvePoint& P2) {
    return ordered_json::array({P1.to_string(), P2.to_string()});
}

inline ordered_json case_data_json(const BoundReport& r) {
    const CaseTag& tag = r.tag;
    ordered_json out;
    out["c"] = tag.c;
    if (tag.kind == CaseKind::I) {
        out["a"] = tag.a.to_string();
        out["b"] = tag.b.to_string();
        out["p_at_infinity"] = tag.p_at_infinity;
        out["x_p"] = tag.p_at_infinity ? ordered_json(nullptr) : ordered_json(tag.x_p);
        out["y_p"] = tag.p_at_infinity ? ordered_json(nullptr) : element_json(tag.y_p);
        out["y_rational"] = tag.y_rational;
        out["root_subcase"] = tag.root_subcase;
        return out;
    }
    if (tag.kind == CaseKind::II || tag.kind == CaseKind::EllipticObstruction) {
        out["gamma"] = tag.gamma;
        out["mobius_image"] = tag.mobius_image.to_string();
        if (tag.kind == CaseKind::II)
            out["sqrt_inv_gamma"] =
                tag.sqrt_inv_gamma ? ordered_json(*tag.sqrt_inv_gamma) : ordered_json(nullptr);
        ordered_json chk;
        chk["gamma"] = tag.gamma;
        chk["c_fourth"] = r.C.field()->pow(tag.c, 4);
        std::optional<u32> rho = r.beta.pole();
        if (rho && r.C.f().eval_base(*rho) == 0) {
            const Field& k = r.C.field();
            chk["fprime_rho"] = r.C.f().derivative().eval_base(*rho);
            chk["a7_c3"] = k->mul(r.C.f().leading(), k->pow(tag.c, 3));
        } else {
            chk["fprime_rho"] = nullptr;
            chk["a7_c3"] = nullptr;
        }
        out["elliptic_check"] = chk;
    }
    return out;
}

inline ordered_json z_locus_json(const ZAnalysis& za) {
    ordered_json out;
    out["F"] = za.F.to_string();
    out["S"] = za.S_poly.to_string();
    out["G"] = za.G.to_string();
    out["diag_quadratic"] = za.diag_quad.to_string();
    out["eta"] = za.eta;
    out["rho"] = za.rho ? ordered_json(*za.rho) : ordered_json(nullptr);
    out["sing_z_closure"] = za.sing_z_closure_count;
    ordered_json sing = ordered_json::array();
    for (const auto& [P1, P2] : za.sing_z) sing.push_back(point_pair_json(P1, P2));
    out["sing_z"] = sing;
    return out;
}

inline ordered_json d_locus_json(const DLocus& d, u32 p) {
    ordered_json arr = ordered_json::array();
    for (const DPoint& q : d.points) {
        ordered_json e;
        e["class"] = q.cls.key();
        e["provenance"] = provenance_name(q.prov);
        e["singular"] = q.singular;
        e["delta"] = q.delta < 0 ? ordered_json(nullptr) : ordered_json(q.delta);
        e["m"] = q.m_bound;
        e["disk_bound"] =
            u32(q.m_bound) < p ? ordered_json(disk_bound(q.m_bound, p)) : ordered_json(nullptr);
        arr.push_back(e);
    }
    return arr;
}

inline ordered_json siksek_json(const BoundReport& r) {
    ordered_json out;
    AnnihilatorBasis ann = basis_from_beta(r.beta);
    OriginCheck oc = zero_disk_check_origin(r.C, ann);
    ordered_json origin;
    origin["passes"] = oc.passes;
    origin["failing_centers"] = oc.failing_centers;
    out["origin_check"] = origin;
    if (r.p > kEnumerationPrimeCap) {
        out["classes"] = nullptr;
        return out;
    }
    ordered_json arr = ordered_json::array();
    for (const auto& [key, cls] : enumerate_classes(r.C, 2)) {
        ordered_json e;
        e["class"] = key;
        if (cls.weight() == 0) {
            e["method"] = "origin_aggregate";
            e["det"] = nullptr;
            e["clears"] = oc.passes;
        } else {
            auto [P1, P2] = class_support(r.C, cls);
            DiskVerdict v = siksek_matrix(r.C, ann, P1, P2);
            e["method"] = "matrix";
            e["det"] = element_json(v.det);
            e["clears"] = v.clears;
        }
        arr.push_back(e);
    }
    out["classes"] = arr;
    return out;
}

} // namespace detail

inline ordered_json report_json(const BoundReport& r, const JobSpec& job) {
    ordered_json out;
    out["schema"] = 1;
    out["command"] = "run";

    ordered_json input;
    input["p"] = r.p;
    input["curve"] = job.curve;
    ordered_json fmodp = ordered_json::array();
    for (int i = 0; i <= 7; ++i) fmodp.push_back(r.C.f().coeff(i));
    input["curve_mod_p"] = fmodp;
    input["f_mod_p"] = r.C.f().to_string();
    input["alpha"] = job.alpha ? ordered_json({(*job.alpha)[0], (*job.alpha)[1]})
                               : ordered_json(nullptr);
    input["beta"] = ordered_json::array({r.beta.b01(), r.beta.b02(), r.beta.b12()});
    out["input"] = input;

    out["case"] = case_kind_name(r.tag.kind);
    out["case_data"] = detail::case_data_json(r);
    out["z_locus"] = r.za ? detail::z_locus_json(*r.za) : ordered_json(nullptr);

    ordered_json counts;
    counts["c_points"] = r.c_count;
    counts["c2_points"] = r.c2_count;
    counts["w2_points"] = r.w2_count;
    counts["d_points"] = r.d ? ordered_json(r.d->points.size()) : ordered_json(nullptr);
    counts["sing_d_points"] = detail::opt_int(r.sing_d_count);
    counts["n_value"] = detail::opt_int(r.n_value_opt);
    counts["jacobian_order"] =
        r.p <= 101 ? ordered_json(zeta_data(r.C).jacobian_order) : ordered_json(nullptr);
    out["counts"] = counts;

    out["d_locus"] = r.d ? detail::d_locus_json(*r.d, r.p) : ordered_json(nullptr);
    ordered_json mt = ordered_json::object();
    if (r.d)
        for (const DPoint& q : r.d->points) mt[q.cls.key()] = q.m_bound;
    out["m_table"] = r.d ? mt : ordered_json(nullptr);

    ordered_json bounds;
    bounds["refined_bound"] = detail::opt_u64(r.refined_bound);
    bounds["closed_form_bound"] = detail::opt_u64(r.closed_form);
    bounds["closed_form_alt"] = detail::opt_u64(r.closed_form_alt);
    bounds["closed_form_min"] = detail::opt_u64(r.closed_form_min);
    if (r.theorem_value) {
        ordered_json th;
        th["value"] = *r.theorem_value;
        ordered_json sq;
        sq["coefficient"] = 12;
        sq["radicand"] = r.p;
        sq["ceiling"] = r.sqrt_ceiling;
        th["sqrt_term"] = sq;
        bounds["theorem_bound"] = th;
    } else {
        bounds["theorem_bound"] = nullptr;
    }
    out["bounds"] = bounds;

    out["siksek"] = r.obstructed ? ordered_json(nullptr) : detail::siksek_json(r);

    if (!job.known_points.empty() && !r.obstructed) {
        std::vector<DivisorClass> gens;
        for (const auto& [u_str, v_str] : job.known_points)
            gens.push_back(reduce_known_point(r.C, u_str, v_str));
        auto sub = subgroup_generated(r.C, gens);
        ordered_json block;
        ordered_json gen_keys = ordered_json::array();
        for (const DivisorClass& g : gens) gen_keys.push_back(g.key());
        block["generators"] = gen_keys;
        block["subgroup_order"] = sub.size();
        ordered_json members = ordered_json::array();
        for (const auto& [key, cls] : sub)
            if (cls.weight() <= 2) members.push_back(key);
        block["w2_classes"] = members;
        block["count"] = members.size();
        out["subgroup_intersection"] = block;
    } else {
        out["subgroup_intersection"] = nullptr;
    }

    out["warnings"] = r.warnings;
    return out;
}

inline ordered_json verify_json(const BoundReport& r, const std::vector<OracleResult>& oracles) {
    ordered_json out;
    out["schema"] = 1;
    out["command"] = "verify";
    out["p"] = r.p;
    out["case"] = case_kind_name(r.tag.kind);
    bool all = true;
    ordered_json arr = ordered_json::array();
    for (const OracleResult& o : oracles) {
        ordered_json e;
        e["name"] = o.name;
        e["passed"] = o.passed;
        e["detail"] = o.detail;
        arr.push_back(e);
        all = all && o.passed;
    }
    out["oracles"] = arr;
    out["all_passed"] = all;
    return out;
}

// Shared front half of both CLI verbs: reduce the curve, build the wedge
// form, and run the bound pipeline.
inline BoundReport report_for_job(const JobSpec& job) {
    CurveModP C = CurveModP::reduce(job.curve, job.p);
    const Field& k = C.field();
    WedgeForm beta = job.beta
                         ? WedgeForm::from_raw(k, (*job.beta)[0], (*job.beta)[1], (*job.beta)[2])
                         : beta_from_alpha(k, (*job.alpha)[0], (*job.alpha)[1]);
    return compute_bound(C, beta);
}

} // namespace w2bound
