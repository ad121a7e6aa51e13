#include "nqc/sat.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nqc/circuit.hpp"
#include "nqc/gates.hpp"

namespace nqc {

std::string sat_decision_name(SatDecision d) {
    switch (d) {
        case SatDecision::SAT: return "SAT";
        case SatDecision::UNSAT: return "UNSAT";
        case SatDecision::INCONCLUSIVE: return "INCONCLUSIVE";
    }
    return "?";
}

void apply_oracle(ScaledState& s, const CnfFormula& f, int work_start,
                  int work_count, int ancilla) {
    if (work_count != f.num_vars) {
        throw std::invalid_argument("work register size must match variable count");
    }
    if (work_start < 0 || work_start + work_count > s.n_qubits()) {
        throw std::invalid_argument("work register out of range");
    }
    if (ancilla < 0 || ancilla >= s.n_qubits() ||
        (ancilla >= work_start && ancilla < work_start + work_count)) {
        throw std::invalid_argument("ancilla overlaps the work register");
    }
    // f evaluated once per work assignment, then swaps applied per pair.
    const std::uint64_t work_dim = std::uint64_t{1} << work_count;
    std::vector<bool> truth(work_dim);
    for (std::uint64_t a = 0; a < work_dim; ++a) {
        truth[a] = eval_formula(f, a);
    }
    auto& amps = s.amps();
    const std::uint64_t abit = std::uint64_t{1} << ancilla;
    const std::uint64_t mask = work_dim - 1;
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (i & abit) {
            continue;
        }
        const std::uint64_t assignment = (i >> work_start) & mask;
        if (!truth[assignment]) {
            std::swap(amps[i], amps[i | abit]);
        }
    }
}

long long choose_r(int n, double g) {
    if (!(g > 1.0)) {
        throw std::invalid_argument("choose_r requires g > 1");
    }
    if (n < 0) {
        throw std::invalid_argument("negative variable count");
    }
    if (n == 0) {
        return 0;
    }
    const double raw = n * std::numbers::ln2 / std::log(g);
    auto r = static_cast<long long>(std::ceil(raw));
    // Guard against ceil landing one short of g^r >= N on exact ratios.
    while (r * std::log(g) < n * std::numbers::ln2 - 1e-12) {
        ++r;
    }
    return r;
}

double closed_form_p(std::uint64_t big_n, std::uint64_t k, double g, long long r) {
    if (k > big_n) {
        throw std::invalid_argument("model count exceeds assignment count");
    }
    if (k == 0) {
        return 0.0;
    }
    if (k == big_n) {
        return 1.0;
    }
    // P = 1 / (1 + ((N-K)/K) g^{-4r}), kept in log space.
    const double log_ratio = std::log(static_cast<double>(big_n - k)) -
                             std::log(static_cast<double>(k)) -
                             4.0 * static_cast<double>(r) * std::log(g);
    if (log_ratio > 700.0) {
        return 0.0;
    }
    return 1.0 / (1.0 + std::exp(log_ratio));
}

namespace {

Circuit build_sat_circuit(const CnfFormula& f, double g, long long r) {
    Circuit c;
    const int n = f.num_vars;
    c.n_qubits = n + 1;
    c.name = "sat";
    for (int q = 0; q < n; ++q) {
        c.ops.push_back(GateOp::h(q));
    }
    OracleRef o;
    o.ancilla = n;
    o.formula = f;
    c.ops.push_back(std::move(o));
    for (long long i = 0; i < r; ++i) {
        c.ops.push_back(GateOp::g_gate(n, g));
    }
    c.ops.push_back(Measure{n});
    return c;
}

} // namespace

SatRunReport solve_sat(const CnfFormula& f, const SatOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const int n = f.num_vars;
    if (n > opt.capacity) {
        throw std::invalid_argument("formula exceeds engine capacity (" +
                                    std::to_string(opt.capacity) + " variables)");
    }
    if (!(opt.g > 1.0)) {
        throw std::invalid_argument("solve_sat requires g > 1");
    }
    const long long r = opt.r ? *opt.r : choose_r(n, opt.g);
    if (r < 0) {
        throw std::invalid_argument("r must be nonnegative");
    }

    SatRunReport rep;
    rep.n = n;
    rep.big_n = std::uint64_t{1} << n;
    rep.r_used = r;
    rep.g_used = opt.g;
    rep.seed = opt.seed;

    // The ancilla starts in |0>, so in the r = 0 circuit below the
    // accepting outcome is ancilla = 0 directly.
    ScaledState state = ScaledState::basis(n + 1, 0);
    for (int q = 0; q < n; ++q) {
        apply(state, GateOp::h(q));
    }
    apply_oracle(state, f, 0, n, n);
    apply_g_repeated(state, n, opt.g, r);
    auto [p0, p1] = state.measure_probabilities(n);
    rep.p_accept = p0;
    rep.p_reject = p1;

    if (rep.p_accept > 2.0 / 3.0) {
        rep.decision = SatDecision::SAT;
    } else if (rep.p_accept < 1.0 / 3.0) {
        rep.decision = SatDecision::UNSAT;
    } else {
        rep.decision = SatDecision::INCONCLUSIVE;
    }

    if (opt.with_brute_force) {
        rep.brute_force_k = brute_force_count(f);
    }

    if (opt.shots > 0) {
        Circuit c = build_sat_circuit(f, opt.g, r);
        RunReport rr = run_shots(c, opt.shots, opt.seed);
        rep.shots = opt.shots;
        auto it = rr.shot_counts.find("0");
        rep.accept_shots = it == rr.shot_counts.end() ? 0 : it->second;
    }
    rep.wall_time_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    return rep;
}

CountResult count_models(const CnfFormula& f, double g, std::optional<long long> r_opt,
                         std::uint64_t shots, std::uint64_t seed, int capacity) {
    CountResult res;
    const std::uint64_t big_n = std::uint64_t{1} << f.num_vars;

    if (shots == 0) {
        SatOptions opt;
        opt.g = g;
        opt.r = r_opt;
        opt.capacity = capacity;
        const SatRunReport rep = solve_sat(f, opt);
        if (rep.p_accept == 0.0) {
            res.k = 0;
            return res;
        }
        if (rep.p_reject == 0.0) {
            res.k = big_n;
            return res;
        }
        // (N-K)/K = (p_reject / p_accept) g^{4r}; solve for K in log space.
        const double log_q = std::log(rep.p_reject) - std::log(rep.p_accept) +
                             4.0 * static_cast<double>(rep.r_used) * std::log(g);
        double k_est;
        if (log_q >= 0.0) {
            const double e = std::exp(-log_q);
            k_est = static_cast<double>(big_n) * e / (1.0 + e);
        } else {
            k_est = static_cast<double>(big_n) / (1.0 + std::exp(log_q));
        }
        res.k = static_cast<std::uint64_t>(std::llround(k_est));
        return res;
    }

    // Sampled mode runs at r = 0 where P = K/N exactly.
    SatOptions opt;
    opt.g = g;
    opt.r = 0;
    opt.shots = shots;
    opt.seed = seed;
    opt.capacity = capacity;
    const SatRunReport rep = solve_sat(f, opt);
    const double phat = static_cast<double>(rep.accept_shots) / static_cast<double>(shots);
    res.k = static_cast<std::uint64_t>(std::llround(phat * static_cast<double>(big_n)));
    if (rep.accept_shots == 0 || rep.accept_shots == shots) {
        res.invertible = false;
    }
    // Wilson score interval at z = 3.29 (99.9%), mapped back to counts.
    const double z = 3.29;
    const double nshots = static_cast<double>(shots);
    const double denom = 1.0 + z * z / nshots;
    const double center = (phat + z * z / (2.0 * nshots)) / denom;
    const double half = z / denom *
                        std::sqrt(phat * (1.0 - phat) / nshots +
                                  z * z / (4.0 * nshots * nshots));
    const double lo = std::max(0.0, center - half);
    const double hi = std::min(1.0, center + half);
    res.interval = {static_cast<std::uint64_t>(std::floor(lo * static_cast<double>(big_n))),
                    static_cast<std::uint64_t>(std::ceil(hi * static_cast<double>(big_n)))};
    return res;
}

} // namespace nqc
