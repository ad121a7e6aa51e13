#include "nqc/boson.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace nqc {

namespace {

constexpr double kNormTol = 1e-12;

double abs2(const std::complex<double>& c) {
    return std::norm(c);
}

// log2 of a positive mpz, accurate enough for probability ratios.
double log2_mpz(const mpz_class& z) {
    signed long exp;
    const double d = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log2(d) + static_cast<double>(exp);
}

} // namespace

BosonQubit::BosonQubit(mpz_class n, mpz_class m, std::complex<double> c0,
                       std::complex<double> c1)
    : n_mode0(std::move(n)), n_mode1(std::move(m)), c0(c0), c1(c1) {
    if (n_mode0 <= 0 || n_mode1 <= 0) {
        throw std::invalid_argument("boson counts must be positive");
    }
    const double total = abs2(c0) + abs2(c1);
    if (std::abs(total - 1.0) > kNormTol) {
        throw std::invalid_argument("branch weights must satisfy |c0|^2+|c1|^2 = 1");
    }
}

ReducedDensity reduced_density(const BosonQubit& b) {
    return {b.n_mode0, b.n_mode1, abs2(b.c0), abs2(b.c1)};
}

std::pair<double, double> single_particle_measure_prob(const BosonQubit& b) {
    const double w0 = abs2(b.c0);
    const double w1 = abs2(b.c1);
    const bool z0 = b.n_mode0 == 0 || w0 == 0.0;
    const bool z1 = b.n_mode1 == 0 || w1 == 0.0;
    if (z0 && z1) {
        throw std::domain_error("reduced density matrix has zero trace");
    }
    if (z0) {
        return {0.0, 1.0};
    }
    if (z1) {
        return {1.0, 0.0};
    }
    // p0/p1 = (N/M) (w0/w1); evaluate the big-int ratio in log space.
    const double log_odds = (log2_mpz(b.n_mode0) - log2_mpz(b.n_mode1)) * std::numbers::ln2 +
                            std::log(w0) - std::log(w1);
    if (log_odds > 700.0) {
        return {1.0, 0.0};
    }
    if (log_odds < -700.0) {
        return {0.0, 1.0};
    }
    const double odds = std::exp(log_odds);
    return {odds / (1.0 + odds), 1.0 / (1.0 + odds)};
}

BosonQubit apply_boson_G(const BosonQubit& b, unsigned long g) {
    if (g < 2) {
        throw std::invalid_argument("boson-model g must be an integer >= 2");
    }
    if (!mpz_divisible_ui_p(b.n_mode1.get_mpz_t(), g)) {
        throw std::domain_error("g does not divide the mode-1 boson count");
    }
    return BosonQubit(b.n_mode0 * g, b.n_mode1 / g, b.c0, b.c1);
}

BosonResourceReport resource_report(const BosonQubit& b0, unsigned long g, unsigned long r) {
    if (g < 2) {
        throw std::invalid_argument("boson-model g must be an integer >= 2");
    }
    mpz_class gr;
    mpz_ui_pow_ui(gr.get_mpz_t(), g, r);
    if (!mpz_divisible_p(b0.n_mode1.get_mpz_t(), gr.get_mpz_t())) {
        throw std::domain_error("g^r does not divide the mode-1 boson count");
    }
    BosonResourceReport rep;
    rep.n_final = b0.n_mode0 * gr;
    rep.m_final = b0.n_mode1 / gr;
    rep.bosons_pumped = (gr - 1) * b0.n_mode0;
    rep.bosons_removed = b0.n_mode1 - rep.m_final;
    rep.exponential = r >= 1;
    return rep;
}

namespace {

double branch_norm2(const std::vector<std::complex<double>>& v) {
    double s = 0.0;
    for (const auto& a : v) {
        s += std::norm(a);
    }
    return s;
}

} // namespace

ReducedDensity entangled_reduced_density(const EntangledBosonState& e) {
    const std::uint64_t dim = std::uint64_t{1} << e.n_register_qubits;
    if (e.x_branch.size() != dim || e.y_branch.size() != dim) {
        throw std::invalid_argument("branch dimension does not match register size");
    }
    const double nx2 = branch_norm2(e.x_branch);
    const double ny2 = branch_norm2(e.y_branch);
    std::complex<double> overlap{0, 0};
    for (std::uint64_t i = 0; i < dim; ++i) {
        overlap += std::conj(e.x_branch[i]) * e.y_branch[i];
    }
    if (nx2 > 0.0 && ny2 > 0.0 &&
        std::abs(overlap) > 1e-12 * std::sqrt(nx2 * ny2)) {
        throw std::invalid_argument("entangled branches are not orthogonal");
    }
    if (std::abs(nx2 + ny2 - 1.0) > kNormTol) {
        throw std::invalid_argument("branch weights must sum to 1");
    }
    return {e.n_mode0, e.n_mode1, nx2, ny2};
}

std::vector<std::complex<double>> collapse_entangled(const EntangledBosonState& e, int mode) {
    if (mode != 0 && mode != 1) {
        throw std::invalid_argument("mode must be 0 or 1");
    }
    const auto& branch = mode == 0 ? e.x_branch : e.y_branch;
    const double n2 = branch_norm2(branch);
    if (n2 == 0.0) {
        throw std::domain_error("collapse onto zero-weight branch");
    }
    std::vector<std::complex<double>> out = branch;
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : out) {
        a *= inv;
    }
    return out;
}

} // namespace nqc
