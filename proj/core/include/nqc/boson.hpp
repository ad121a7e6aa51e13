#ifndef NQC_BOSON_HPP
#define NQC_BOSON_HPP

#include <gmpxx.h>

#include <complex>
#include <utility>
#include <vector>

namespace nqc {

// Two-mode many-boson logical qubit: c0 (N bosons in mode 0) +
// c1 (M bosons in mode 1). Boson counts are arbitrary precision; they
// grow as g^r by design.
struct BosonQubit {
    mpz_class n_mode0;
    mpz_class n_mode1;
    std::complex<double> c0;
    std::complex<double> c1;

    BosonQubit(mpz_class n, mpz_class m, std::complex<double> c0,
               std::complex<double> c1);
};

// Diagonal of the one-particle reduced density matrix: the exact
// big-int boson counts with the floating branch weights kept apart.
struct ReducedDensity {
    mpz_class count0;
    mpz_class count1;
    double w0; // |c0|^2
    double w1; // |c1|^2

    double entry0() const { return count0.get_d() * w0; }
    double entry1() const { return count1.get_d() * w1; }
};

ReducedDensity reduced_density(const BosonQubit& b);

// (p_mode0, p_mode1): normalized odds N|c0|^2 : M|c1|^2, evaluated with
// big-int ratios so huge counts do not overflow.
std::pair<double, double> single_particle_measure_prob(const BosonQubit& b);

// The gain/loss step: N -> g N, M -> M / g (integer g >= 2, g | M).
BosonQubit apply_boson_G(const BosonQubit& b, unsigned long g);

struct BosonResourceReport {
    mpz_class n_final;
    mpz_class m_final;
    mpz_class bosons_pumped;  // (g^r - 1) N
    mpz_class bosons_removed; // M (1 - g^-r)
    bool exponential = false; // set when r >= 1 (pumping grows as g^r)
};

BosonResourceReport resource_report(const BosonQubit& b0, unsigned long g, unsigned long r);

// Register entangled with the boson qubit: the x-branch rides with the
// mode-0 Fock term, the y-branch with mode-1. Branch squared norms are
// the weights |c0|^2, |c1|^2.
struct EntangledBosonState {
    int n_register_qubits;
    std::vector<std::complex<double>> x_branch; // 2^k amplitudes
    std::vector<std::complex<double>> y_branch;
    mpz_class n_mode0;
    mpz_class n_mode1;
};

// Requires <x|y> = 0 within 1e-12 (relative to the branch norms).
ReducedDensity entangled_reduced_density(const EntangledBosonState& e);

// Single-particle measurement collapse: the register keeps the branch
// matching the observed mode, renormalized.
std::vector<std::complex<double>> collapse_entangled(const EntangledBosonState& e, int mode);

} // namespace nqc

#endif
