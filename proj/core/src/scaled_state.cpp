#include "nqc/scaled_state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nqc {

namespace {
double abs2(const cplx& c) {
    return c.real() * c.real() + c.imag() * c.imag();
}
} // namespace

ScaledState::ScaledState(int n_qubits, std::vector<cplx> amps, double log_scale)
    : n_qubits_(n_qubits), amps_(std::move(amps)), log_scale_(log_scale) {
    if (n_qubits < 0) {
        throw std::invalid_argument("negative qubit count");
    }
    if (amps_.size() != (std::uint64_t{1} << n_qubits)) {
        throw std::invalid_argument("amplitude count does not match qubit count");
    }
    bool any = false;
    for (const auto& a : amps_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("non-finite amplitude");
        }
        if (a != cplx{0.0, 0.0}) {
            any = true;
        }
    }
    if (!any) {
        throw std::invalid_argument("all-zero state is invalid");
    }
}

ScaledState ScaledState::basis(int n_qubits, std::uint64_t basis_index) {
    if (n_qubits < 0 || n_qubits > 62) {
        throw std::invalid_argument("unsupported qubit count");
    }
    if (basis_index >= (std::uint64_t{1} << n_qubits)) {
        throw std::out_of_range("basis index out of range for " +
                                std::to_string(n_qubits) + " qubits");
    }
    std::vector<cplx> amps(std::uint64_t{1} << n_qubits, cplx{0.0, 0.0});
    amps[basis_index] = cplx{1.0, 0.0};
    return ScaledState(n_qubits, std::move(amps), 0.0);
}

double ScaledState::Norm2::log_value() const {
    return std::log(mantissa) + log_part;
}

ScaledState::Norm2 ScaledState::norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) {
        s += abs2(a);
    }
    // d^2 = s * e^{2 log_scale}; split into mantissa in [1, e) and an
    // integer log part so the value survives extreme ledgers.
    double logv = std::log(s) + 2.0 * log_scale_;
    double k = std::floor(logv);
    return Norm2{std::exp(logv - k), k};
}

std::pair<double, double> ScaledState::measure_probabilities(int qubit) const {
    if (qubit < 0 || qubit >= n_qubits_) {
        throw std::out_of_range("qubit index out of range");
    }
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    double w0 = 0.0, w1 = 0.0;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        ((i & bit) ? w1 : w0) += abs2(amps_[i]);
    }
    const double total = w0 + w1;
    return {w0 / total, w1 / total};
}

void ScaledState::collapse(int qubit, int outcome) {
    if (qubit < 0 || qubit >= n_qubits_) {
        throw std::out_of_range("qubit index out of range");
    }
    if (outcome != 0 && outcome != 1) {
        throw std::invalid_argument("outcome must be 0 or 1");
    }
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    double kept = 0.0;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        const bool match = ((i & bit) != 0) == (outcome == 1);
        if (match) {
            kept += abs2(amps_[i]);
        }
    }
    if (kept == 0.0) {
        throw std::domain_error("collapse onto zero-probability outcome");
    }
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        const bool match = ((i & bit) != 0) == (outcome == 1);
        if (!match) {
            amps_[i] = cplx{0.0, 0.0};
        }
    }
    rescale();
}

double ScaledState::max_abs_amp() const {
    double m = 0.0;
    for (const auto& a : amps_) {
        m = std::max(m, std::abs(a));
    }
    return m;
}

void ScaledState::rescale() {
    const double m = max_abs_amp();
    if (m == 0.0) {
        throw std::domain_error("state annihilated: all amplitudes are zero");
    }
    if (m == 1.0) {
        return;
    }
    const double inv = 1.0 / m;
    for (auto& a : amps_) {
        a *= inv;
    }
    log_scale_ += std::log(m);
}

void ScaledState::rescale_if_needed() {
    static const double kHi = std::ldexp(1.0, 32);
    static const double kLo = std::ldexp(1.0, -32);
    const double m = max_abs_amp();
    if (m > kHi || m < kLo) {
        rescale();
    }
}

} // namespace nqc
