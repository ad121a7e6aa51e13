// nqc: command-line front end over the simulator core.
//
// Exit codes: 0 success, 2 parse/format error, 3 numeric or constraint
// error, 4 verification mismatch.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "nqc/boson.hpp"
#include "nqc/circuit.hpp"
#include "nqc/cnf.hpp"
#include "nqc/dilation.hpp"
#include "nqc/sat.hpp"
#include "nqc/synthesis.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "nqc-report/1";

struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// DIMACS problems are format errors (exit 2), not constraint errors.
nqc::CnfFormula load_cnf(const std::string& path) {
    try {
        return nqc::load_dimacs_file(path);
    } catch (const std::invalid_argument& e) {
        throw nqc::ParseError(0, 0, std::string("DIMACS: ") + e.what());
    }
}

int default_capacity() {
    if (const char* env = std::getenv("NQC_CAPACITY")) {
        try {
            const int v = std::stoi(env);
            if (v >= 1 && v <= 30) {
                return v;
            }
        } catch (const std::exception&) {
        }
        throw std::invalid_argument("NQC_CAPACITY must be an integer in [1, 30]");
    }
    return 24;
}

void flatten(const json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            flatten(v, prefix.empty() ? k : prefix + "." + k, out);
        }
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
        }
    } else {
        out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

void emit(const json& report, const std::string& format) {
    if (format == "json") {
        std::cout << report.dump(2) << "\n";
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(report, "", rows);
    if (format == "csv") {
        std::cout << "key,value\n";
        for (const auto& [k, v] : rows) {
            std::cout << k << "," << v << "\n";
        }
        return;
    }
    for (const auto& [k, v] : rows) {
        std::cout << k << " = " << v << "\n";
    }
}

json complex_json(const nqc::cplx& z) {
    return json::array({z.real(), z.imag()});
}

json mat2_json(const nqc::Mat2& m) {
    return json::array(
        {complex_json(m[0]), complex_json(m[1]), complex_json(m[2]), complex_json(m[3])});
}

json run_report_json(const nqc::RunReport& rep) {
    json j;
    json exact = json::array();
    for (const auto& q : rep.exact) {
        exact.push_back({{"qubit", q.qubit}, {"p0", q.p0}, {"p1", q.p1}});
    }
    j["exact"] = std::move(exact);
    j["final_norm_squared"] = {{"mantissa", rep.final_norm_squared.mantissa},
                               {"log", rep.final_norm_squared.log_part}};
    j["shots"] = rep.shots;
    j["seed"] = rep.seed;
    if (rep.shots > 0) {
        json counts = json::object();
        for (const auto& [k, v] : rep.shot_counts) {
            counts[k] = v;
        }
        j["shot_counts"] = std::move(counts);
    }
    return j;
}

json dilation_report_json(const nqc::DilationProgram& prog,
                          const nqc::PostselectReport& rep) {
    json j;
    json steps = json::array();
    for (const auto& s : prog.steps) {
        if (const auto* d = std::get_if<nqc::DilationStep>(&s)) {
            steps.push_back({{"target", d->target}, {"eta", d->eta}});
        }
    }
    j["steps"] = std::move(steps);
    j["step_success"] = rep.step_success;
    const double log10_success = rep.log_success / std::numbers::ln10;
    j["cumulative_success"] = {{"log10", log10_success}};
    if (rep.log_success > -700.0) {
        j["cumulative_success"]["linear"] = std::exp(rep.log_success);
    }
    if (!std::isnan(rep.naive_power_expression)) {
        j["naive_power_expression"] = rep.naive_power_expression;
    }
    if (rep.shots > 0) {
        j["shots"] = rep.shots;
        j["seed"] = rep.seed;
        j["surviving_shots"] = rep.surviving_shots;
        j["discarded_shots"] = rep.discarded_shots;
        json counts = json::object();
        for (const auto& [k, v] : rep.shot_counts) {
            counts[k] = v;
        }
        j["shot_counts"] = std::move(counts);
    }
    return j;
}

int cmd_run(const std::string& path, std::uint64_t shots, std::uint64_t seed,
            bool dilated, const std::string& format) {
    const nqc::Circuit c = nqc::load_circuit_file(path);
    json report;
    report["schema"] = kSchema;
    report["command"] = dilated ? "run-dilated" : "run";
    report["circuit"] = path;
    report["n_qubits"] = c.n_qubits;
    if (dilated) {
        const auto prog = nqc::compile_circuit(c);
        const auto exact = nqc::run_postselected_exact(prog);
        report.update(dilation_report_json(prog, exact));
        if (shots > 0) {
            const auto sampled = nqc::run_postselected_shots(prog, shots, seed);
            report["shots"] = sampled.shots;
            report["seed"] = sampled.seed;
            report["surviving_shots"] = sampled.surviving_shots;
            report["discarded_shots"] = sampled.discarded_shots;
            json counts = json::object();
            for (const auto& [k, v] : sampled.shot_counts) {
                counts[k] = v;
            }
            report["shot_counts"] = std::move(counts);
        }
    } else {
        nqc::RunReport rep = nqc::run_exact(c);
        if (shots > 0) {
            nqc::RunReport sampled = nqc::run_shots(c, shots, seed);
            rep.shot_counts = std::move(sampled.shot_counts);
            rep.shots = shots;
            rep.seed = seed;
        }
        report.update(run_report_json(rep));
    }
    emit(report, format);
    return 0;
}

std::optional<long long> parse_r(const std::string& r_str) {
    if (r_str == "auto") {
        return std::nullopt;
    }
    std::size_t pos = 0;
    const long long r = std::stoll(r_str, &pos);
    if (pos != r_str.size() || r < 0) {
        throw std::invalid_argument("--r must be 'auto' or a nonnegative integer");
    }
    return r;
}

json sat_report_json(const nqc::SatRunReport& rep) {
    json j;
    j["n"] = rep.n;
    j["N"] = rep.big_n;
    if (rep.brute_force_k) {
        j["K_bruteforce"] = *rep.brute_force_k;
    }
    j["r"] = rep.r_used;
    j["g"] = rep.g_used;
    j["p_accept"] = rep.p_accept;
    j["p_reject"] = rep.p_reject;
    j["decision"] = nqc::sat_decision_name(rep.decision);
    if (rep.count_estimate) {
        j["count_estimate"] = *rep.count_estimate;
    }
    j["shots"] = rep.shots;
    j["seed"] = rep.seed;
    if (rep.shots > 0) {
        j["accept_shots"] = rep.accept_shots;
    }
    return j;
}

int cmd_sat(const std::string& path, double g, const std::string& r_str,
            std::uint64_t shots, std::uint64_t seed, int capacity, bool verify,
            const std::string& format) {
    const nqc::CnfFormula f = load_cnf(path);
    nqc::SatOptions opt;
    opt.g = g;
    opt.r = parse_r(r_str);
    opt.shots = shots;
    opt.seed = seed;
    opt.capacity = capacity;
    opt.with_brute_force = verify;
    const auto rep = nqc::solve_sat(f, opt);
    json report;
    report["schema"] = kSchema;
    report["command"] = "sat";
    report["cnf"] = path;
    report.update(sat_report_json(rep));
    emit(report, format);
    if (verify) {
        const bool truly_sat = *rep.brute_force_k > 0;
        const bool claimed_sat = rep.decision == nqc::SatDecision::SAT;
        if (rep.decision == nqc::SatDecision::INCONCLUSIVE || truly_sat != claimed_sat) {
            throw VerifyError("decision disagrees with brute force");
        }
        const double expected =
            nqc::closed_form_p(rep.big_n, *rep.brute_force_k, rep.g_used, rep.r_used);
        if (std::abs(rep.p_accept - expected) > 1e-9) {
            throw VerifyError("p_accept deviates from the closed form");
        }
    }
    return 0;
}

int cmd_count(const std::string& path, double g, const std::string& r_str,
              bool exact, std::uint64_t shots, std::uint64_t seed, int capacity,
              bool verify, const std::string& format) {
    const nqc::CnfFormula f = load_cnf(path);
    if (exact) {
        shots = 0;
    }
    const auto res = nqc::count_models(f, g, parse_r(r_str), shots, seed, capacity);
    json report;
    report["schema"] = kSchema;
    report["command"] = "count";
    report["cnf"] = path;
    report["n"] = f.num_vars;
    report["N"] = std::uint64_t{1} << f.num_vars;
    report["g"] = g;
    report["K"] = res.k;
    report["invertible"] = res.invertible;
    if (res.interval) {
        report["interval"] = json::array({res.interval->first, res.interval->second});
    }
    report["shots"] = shots;
    report["seed"] = seed;
    std::optional<std::uint64_t> brute;
    if (verify && f.num_vars <= capacity) {
        brute = nqc::brute_force_count(f);
        report["K_bruteforce"] = *brute;
    }
    emit(report, format);
    if (brute) {
        if (shots == 0) {
            if (res.k != *brute) {
                throw VerifyError("exact count disagrees with brute force");
            }
        } else if (res.interval &&
                   (*brute < res.interval->first || *brute > res.interval->second)) {
            throw VerifyError("brute-force count outside the sampled interval");
        }
    }
    return 0;
}

int cmd_plan(const std::vector<double>& initial, const std::vector<double>& fin,
             double g, const std::string& format) {
    const nqc::Vec2 u{nqc::cplx{initial[0], initial[1]}, nqc::cplx{initial[2], initial[3]}};
    const nqc::Vec2 v{nqc::cplx{fin[0], fin[1]}, nqc::cplx{fin[2], fin[3]}};
    const auto plan = nqc::plan_single_qubit(u, v, g);
    const auto out = nqc::execute_plan(plan, u);
    const double dist = std::sqrt(std::norm(out[0] - v[0]) + std::norm(out[1] - v[1]));
    json report;
    report["schema"] = kSchema;
    report["command"] = "plan";
    report["case"] = nqc::synth_case_name(plan.case_tag);
    report["r"] = plan.r;
    report["g"] = plan.g;
    report["pre_rotation"] = mat2_json(plan.pre_rotation);
    report["mid_rotation"] = mat2_json(plan.mid_rotation);
    report["post_rotation"] = mat2_json(plan.post_rotation);
    report["result"] = json::array({complex_json(out[0]), complex_json(out[1])});
    report["distance_to_target"] = dist;
    emit(report, format);
    return 0;
}

int cmd_dilate(const std::string& path, const std::string& emit_path,
               std::uint64_t shots, std::uint64_t seed, const std::string& format) {
    const nqc::Circuit c = nqc::load_circuit_file(path);
    const auto prog = nqc::compile_circuit(c);
    const auto rep = shots > 0 ? nqc::run_postselected_shots(prog, shots, seed)
                               : nqc::run_postselected_exact(prog);
    json report;
    report["schema"] = kSchema;
    report["command"] = "dilate";
    report["circuit"] = path;
    report["n_qubits"] = prog.n_qubits;
    report["ancilla"] = prog.ancilla;
    report.update(dilation_report_json(prog, rep));
    if (!emit_path.empty()) {
        std::ofstream out(emit_path);
        if (!out) {
            throw std::invalid_argument("cannot write to " + emit_path);
        }
        out << nqc::serialize_dilation_program(prog);
        report["emitted"] = emit_path;
    }
    emit(report, format);
    return 0;
}

int cmd_boson(const std::string& n0_str, const std::string& n1_str, unsigned long g,
              unsigned long steps, double w0, const std::string& format) {
    if (!(w0 > 0.0 && w0 < 1.0)) {
        throw std::invalid_argument("--w0 must lie strictly between 0 and 1");
    }
    const nqc::BosonQubit b(mpz_class(n0_str), mpz_class(n1_str), std::sqrt(w0),
                            std::sqrt(1.0 - w0));
    const auto res = nqc::resource_report(b, g, steps);
    const nqc::BosonQubit final_qubit(res.n_final, res.m_final, b.c0, b.c1);
    const auto rho = nqc::reduced_density(final_qubit);
    const auto [p0, p1] = nqc::single_particle_measure_prob(final_qubit);
    json report;
    report["schema"] = kSchema;
    report["command"] = "boson";
    report["g"] = g;
    report["steps"] = steps;
    report["N"] = res.n_final.get_str();
    report["M"] = res.m_final.get_str();
    report["rho"] = {{"count0", rho.count0.get_str()},
                     {"count1", rho.count1.get_str()},
                     {"w0", rho.w0},
                     {"w1", rho.w1}};
    report["p_mode0"] = p0;
    report["p_mode1"] = p1;
    report["bosons_pumped"] = res.bosons_pumped.get_str();
    report["bosons_removed"] = res.bosons_removed.get_str();
    report["exponential"] = res.exponential;
    emit(report, format);
    return 0;
}

int cmd_approx(const std::vector<double>& target, int max_depth,
               const std::string& format) {
    const nqc::Mat2 m{nqc::cplx{target[0], target[1]}, nqc::cplx{target[2], target[3]},
                      nqc::cplx{target[4], target[5]}, nqc::cplx{target[6], target[7]}};
    const auto res = nqc::approximate_unitary_ht(m, max_depth);
    json report;
    report["schema"] = kSchema;
    report["command"] = "approx";
    report["word"] = res.word;
    report["depth"] = res.word.size();
    report["error"] = res.error;
    emit(report, format);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator and analysis toolkit for the non-Hermitian gate model"};
    app.require_subcommand(1);

    std::string format = "text";

    // run
    auto* run = app.add_subcommand("run", "Execute a circuit file");
    std::string run_path;
    std::uint64_t run_shots = 0, run_seed = 0;
    bool run_dilated = false;
    run->add_option("circuit", run_path, "Circuit file")->required();
    run->add_option("--shots", run_shots, "Sample this many shots (0 = exact only)");
    run->add_option("--seed", run_seed, "RNG seed");
    run->add_flag("--dilated", run_dilated, "Compile G gates to unitary-plus-postselection first");

    // sat / count
    auto* sat = app.add_subcommand("sat", "Decide satisfiability of a DIMACS formula");
    auto* count = app.add_subcommand("count", "Estimate the model count of a DIMACS formula");
    std::string sat_path, count_path, sat_r = "auto", count_r = "auto";
    double sat_g = 2.0, count_g = 2.0;
    std::uint64_t sat_shots = 0, sat_seed = 0, count_shots = 0, count_seed = 0;
    bool sat_verify = false, count_verify = false, count_exact = false;
    int capacity = 24;
    sat->add_option("cnf", sat_path, "DIMACS CNF file")->required();
    sat->add_option("--g", sat_g, "Gain parameter (> 1)")->capture_default_str();
    sat->add_option("--r", sat_r, "Amplification rounds or 'auto'")->capture_default_str();
    sat->add_option("--shots", sat_shots, "Also sample this many shots");
    sat->add_option("--seed", sat_seed, "RNG seed");
    sat->add_flag("--verify", sat_verify, "Cross-check against brute force");
    count->add_option("cnf", count_path, "DIMACS CNF file")->required();
    count->add_option("--g", count_g, "Gain parameter (> 1)")->capture_default_str();
    count->add_option("--r", count_r, "Amplification rounds or 'auto'")->capture_default_str();
    count->add_flag("--exact", count_exact, "Exact inversion (default unless --shots)");
    count->add_option("--shots", count_shots, "Sampled mode at r = 0");
    count->add_option("--seed", count_seed, "RNG seed");
    count->add_flag("--verify", count_verify, "Cross-check against brute force");
    for (auto* sub : {sat, count}) {
        sub->add_option("--capacity", capacity, "Variable-count limit")
            ->check(CLI::Range(1, 30));
    }

    // plan
    auto* plan = app.add_subcommand("plan", "Single-qubit non-unitary synthesis");
    std::vector<double> plan_initial, plan_final;
    double plan_g = 2.0;
    plan->add_option("--initial", plan_initial, "Initial vector: re0 im0 re1 im1")
        ->expected(4)
        ->required();
    plan->add_option("--final", plan_final, "Target vector: re0 im0 re1 im1")
        ->expected(4)
        ->required();
    plan->add_option("--g", plan_g, "Gain parameter (> 1)")->capture_default_str();

    // dilate
    auto* dilate = app.add_subcommand("dilate", "Compile a circuit to unitary-plus-postselection");
    std::string dilate_path, dilate_emit;
    std::uint64_t dilate_shots = 0, dilate_seed = 0;
    dilate->add_option("circuit", dilate_path, "Circuit file")->required();
    dilate->add_option("--emit", dilate_emit, "Write the compiled program to this path");
    dilate->add_option("--shots", dilate_shots, "Monte-Carlo postselection shots");
    dilate->add_option("--seed", dilate_seed, "RNG seed");

    // boson
    auto* boson = app.add_subcommand("boson", "Two-mode boson resource accounting");
    std::string boson_n0 = "1", boson_n1 = "1";
    unsigned long boson_g = 2, boson_steps = 0;
    double boson_w0 = 0.5;
    boson->add_option("--n0", boson_n0, "Initial mode-0 boson count (decimal)")->required();
    boson->add_option("--n1", boson_n1, "Initial mode-1 boson count (decimal)")->required();
    boson->add_option("--g", boson_g, "Integer gain >= 2")->capture_default_str();
    boson->add_option("--steps", boson_steps, "Number of gain/loss steps")->capture_default_str();
    boson->add_option("--w0", boson_w0, "Branch weight |c0|^2")->capture_default_str();

    // approx
    auto* approx = app.add_subcommand("approx", "Shortest H/T word for a single-qubit unitary");
    std::vector<double> approx_target;
    int approx_depth = 12;
    approx->add_option("--target", approx_target,
                       "Row-major 2x2 target: 8 floats (re/im interleaved)")
        ->expected(8)
        ->required();
    approx->add_option("--max-depth", approx_depth, "Search depth limit (<= 24)")
        ->capture_default_str();

    for (auto* sub : {run, sat, count, plan, dilate, boson, approx}) {
        sub->add_option("--format", format, "Output format: json|csv|text")
            ->check(CLI::IsMember({"json", "csv", "text"}))
            ->capture_default_str();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help
        }
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (const char* env = std::getenv("NQC_CAPACITY"); env != nullptr) {
            // flag wins over the environment only when given explicitly
            const int env_cap = default_capacity();
            if (sat->count("--capacity") == 0 && count->count("--capacity") == 0) {
                capacity = env_cap;
            }
        }
        if (run->parsed()) {
            return cmd_run(run_path, run_shots, run_seed, run_dilated, format);
        }
        if (sat->parsed()) {
            return cmd_sat(sat_path, sat_g, sat_r, sat_shots, sat_seed, capacity,
                           sat_verify, format);
        }
        if (count->parsed()) {
            return cmd_count(count_path, count_g, count_r, count_exact, count_shots,
                             count_seed, capacity, count_verify, format);
        }
        if (plan->parsed()) {
            return cmd_plan(plan_initial, plan_final, plan_g, format);
        }
        if (dilate->parsed()) {
            return cmd_dilate(dilate_path, dilate_emit, dilate_shots, dilate_seed, format);
        }
        if (boson->parsed()) {
            return cmd_boson(boson_n0, boson_n1, boson_g, boson_steps, boson_w0, format);
        }
        if (approx->parsed()) {
            return cmd_approx(approx_target, approx_depth, format);
        }
    } catch (const nqc::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const VerifyError& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
