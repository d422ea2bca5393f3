// Command line front end.
//
//   w2bound run <job.{json,toml}> [--json-out FILE]
//   w2bound verify <job.{json,toml}>
//
// Curve, prime and wedge form can also be passed as flags, overriding the
// job file (or replacing it entirely). Exit codes: 0 success, 1 malformed
// input or failed oracle, 2 elliptic obstruction, 3 bad reduction or a
// prime the pipeline cannot use.

#include <w2bound/w2bound.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitObstruction = 2;
constexpr int kExitBadReduction = 3;

w2bound::JobSpec load_job(const std::string& path, const CLI::App& cmd, w2bound::i64 p_flag,
                          const std::vector<w2bound::i64>& curve_flag,
                          const std::vector<w2bound::i64>& beta_flag,
                          const std::vector<w2bound::i64>& alpha_flag) {
    w2bound::JobSpec job;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open job file: " + path);
        std::ostringstream buf;
        buf << in.rdbuf();
        if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".toml") == 0)
            job = w2bound::job_from_toml(buf.str());
        else
            job = w2bound::job_from_json(nlohmann::json::parse(buf.str()));
    }
    if (cmd.count("--p") > 0) {
        if (p_flag < 2) throw std::invalid_argument("job needs an integer field p >= 2");
        job.p = w2bound::u32(p_flag);
    }
    if (!curve_flag.empty()) job.curve = curve_flag;
    if (!beta_flag.empty()) {
        job.beta = std::array<w2bound::i64, 3>{beta_flag[0], beta_flag[1], beta_flag[2]};
        if (alpha_flag.empty()) job.alpha.reset();
    }
    if (!alpha_flag.empty()) {
        job.alpha = {std::array<w2bound::i64, 3>{alpha_flag[0], alpha_flag[1], alpha_flag[2]},
                     std::array<w2bound::i64, 3>{alpha_flag[3], alpha_flag[4], alpha_flag[5]}};
        if (beta_flag.empty()) job.beta.reset();
    }
    if (job.p < 2) throw std::invalid_argument("job needs an integer field p >= 2");
    if (job.curve.size() != 8)
        throw std::invalid_argument("job needs a curve array of 8 integer coefficients");
    if (job.beta.has_value() == job.alpha.has_value())
        throw std::invalid_argument("job needs exactly one of beta or alpha");
    return job;
}

void emit(const w2bound::ordered_json& out, const std::string& json_out) {
    std::string text = out.dump(2);
    std::cout << text << "\n";
    if (!json_out.empty()) {
        std::ofstream f(json_out);
        if (!f) throw std::runtime_error("cannot write json output: " + json_out);
        f << text << "\n";
    }
}

int run_job(const w2bound::JobSpec& job, const std::string& json_out, bool verify_mode) {
    using namespace w2bound;
    std::optional<CurveModP> C;
    try {
        C.emplace(CurveModP::reduce(job.curve, job.p));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadReduction;
    }
    std::optional<WedgeForm> beta;
    try {
        if (job.beta)
            beta.emplace(
                WedgeForm::from_raw(C->field(), (*job.beta)[0], (*job.beta)[1], (*job.beta)[2]));
        else
            beta.emplace(beta_from_alpha(C->field(), (*job.alpha)[0], (*job.alpha)[1]));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    try {
        BoundReport r = compute_bound(*C, *beta);
        if (verify_mode) {
            std::vector<OracleResult> oracles = run_oracles(r);
            emit(verify_json(r, oracles), json_out);
            for (const OracleResult& o : oracles)
                if (!o.passed) {
                    std::cerr << "error: oracle failed: " << o.name << "\n";
                    return kExitBadInput;
                }
            return kExitOk;
        }
        emit(report_json(r, job), json_out);
        return r.obstructed ? kExitObstruction : kExitOk;
    } catch (const std::exception& e) {
        std::string msg = e.what();
        std::cerr << "error: " << msg << "\n";
        // Known points over Q that fail to reduce at p are a reduction
        // problem, not a syntax problem.
        return msg.find("denominator divisible by p") != std::string::npos ? kExitBadReduction
                                                                           : kExitBadInput;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chabauty bounds for rational points on the surface W2 = C + C inside the "
                 "Jacobian of an odd degree genus 3 hyperelliptic curve"};
    app.require_subcommand(1);

    std::string job_path, json_out;
    std::vector<w2bound::i64> curve_flag, beta_flag, alpha_flag;
    w2bound::i64 p_flag = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("job", job_path, "job file (.json or .toml)");
        cmd->add_option("--p", p_flag, "prime of good reduction");
        cmd->add_option("--curve", curve_flag,
                        "8 integer coefficients of f, constant term first")
            ->expected(8);
        cmd->add_option("--beta", beta_flag, "wedge form coefficients b01 b02 b12")->expected(3);
        cmd->add_option("--alpha", alpha_flag,
                        "two annihilating differentials as 6 integer coefficients")
            ->expected(6);
        cmd->add_option("--json-out", json_out, "also write the JSON output to this file");
    };
    CLI::App* run_cmd = app.add_subcommand("run", "compute bounds and emit a JSON report");
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run consistency oracles for a job and report pass/fail");
    add_common(run_cmd);
    add_common(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadInput;
    }

    const CLI::App& active = run_cmd->parsed() ? *run_cmd : *verify_cmd;
    w2bound::JobSpec job;
    try {
        job = load_job(job_path, active, p_flag, curve_flag, beta_flag, alpha_flag);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return run_job(job, json_out, verify_cmd->parsed());
}
