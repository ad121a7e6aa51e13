#ifndef NQC_SAT_HPP
#define NQC_SAT_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "nqc/cnf.hpp"
#include "nqc/scaled_state.hpp"

namespace nqc {

enum class SatDecision { SAT, UNSAT, INCONCLUSIVE };

std::string sat_decision_name(SatDecision d);

struct SatRunReport {
    int n = 0;
    std::uint64_t big_n = 0;   // N = 2^n
    long long r_used = 0;
    double g_used = 0.0;
    double p_accept = 0.0;     // exact probability of ancilla outcome 0
    double p_reject = 0.0;     // computed independently, not 1 - p_accept
    SatDecision decision = SatDecision::INCONCLUSIVE;
    std::optional<std::uint64_t> count_estimate;
    std::optional<std::uint64_t> brute_force_k;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::uint64_t accept_shots = 0;
    double wall_time_ms = 0.0;
};

// O = P_s (x) I + (I - P_s) (x) sigma_x on the ancilla: swaps the
// ancilla amplitude pair for every work-register basis state that
// falsifies f. Unitary and an involution. Matrix-free.
void apply_oracle(ScaledState& s, const CnfFormula& f, int work_start,
                  int work_count, int ancilla);

// r = ceil(n ln2 / ln g): makes g^{2r} >= N^2, so P >= N/(N+1) > 2/3
// whenever the formula is satisfiable and N >= 2.
long long choose_r(int n, double g);

// P = K g^{2r} / (K g^{2r} + (N-K) g^{-2r}), evaluated in log space.
// Exactly 0 when K = 0, exactly 1 when K = N.
double closed_form_p(std::uint64_t big_n, std::uint64_t k, double g, long long r);

struct SatOptions {
    double g = 2.0;
    std::optional<long long> r;   // default: choose_r(n, g)
    std::uint64_t shots = 0;      // 0 = exact mode
    std::uint64_t seed = 0;
    int capacity = 24;
    bool with_brute_force = false;
};

// Builds and runs the amplified-oracle circuit: H on all work qubits,
// oracle, G(g)^r on the ancilla, measure the ancilla.
SatRunReport solve_sat(const CnfFormula& f, const SatOptions& opt = {});

struct CountResult {
    std::uint64_t k = 0;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> interval; // shots mode
    bool invertible = true;
};

// Inverts the acceptance probability back to the model count. Exact
// mode recovers K after rounding; shots mode samples at r = 0 (where
// P = K/N) and returns a 99.9% binomial confidence interval.
CountResult count_models(const CnfFormula& f, double g, std::optional<long long> r,
                         std::uint64_t shots = 0, std::uint64_t seed = 0,
                         int capacity = 24);

} // namespace nqc

#endif
