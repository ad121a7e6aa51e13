#ifndef NQC_SCALED_STATE_HPP
#define NQC_SCALED_STATE_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace nqc {

using cplx = std::complex<double>;

// Unnormalized amplitude vector with a logarithmic scale ledger.
// The represented state is e^{log_scale} * amps; all probability
// queries divide by the squared norm, so they never depend on the
// ledger. The ledger exists so that diagonal gain/loss gates can be
// applied thousands of times without over- or underflowing doubles.
class ScaledState {
  public:
    ScaledState(int n_qubits, std::vector<cplx> amps, double log_scale = 0.0);

    static ScaledState basis(int n_qubits, std::uint64_t basis_index);

    int n_qubits() const { return n_qubits_; }
    std::uint64_t dim() const { return std::uint64_t{1} << n_qubits_; }
    const std::vector<cplx>& amps() const { return amps_; }
    std::vector<cplx>& amps() { return amps_; }
    double log_scale() const { return log_scale_; }

    // True squared norm d^2 = mantissa * e^{log_part}, mantissa in [1, e).
    struct Norm2 {
        double mantissa;
        double log_part;
        double log_value() const;
    };
    Norm2 norm_squared() const;

    // Marginal probabilities (p0, p1) of one qubit; independent of the ledger.
    std::pair<double, double> measure_probabilities(int qubit) const;

    // Project onto `outcome` of `qubit` and renormalize via the ledger.
    void collapse(int qubit, int outcome);

    // Factor the largest amplitude magnitude into the ledger so that
    // max |amp| = 1. A no-op on the represented state; repeated calls
    // only move rounding noise between the ledger and the amplitudes.
    void rescale();

    // Rescale only when max |amp| has left [2^-32, 2^32].
    void rescale_if_needed();

    double max_abs_amp() const;

    // Adds delta to the ledger (represented state scales by e^delta).
    void add_log_scale(double delta) { log_scale_ += delta; }

  private:
    int n_qubits_;
    std::vector<cplx> amps_;
    double log_scale_;
};

} // namespace nqc

#endif
