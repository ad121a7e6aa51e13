#ifndef NQC_TEST_HELPERS_HPP
#define NQC_TEST_HELPERS_HPP

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "nqc/gates.hpp"
#include "nqc/scaled_state.hpp"

namespace nqc_test {

using nqc::cplx;

inline std::vector<cplx> random_amps(int n_qubits, std::mt19937_64& rng) {
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<cplx> amps(std::size_t{1} << n_qubits);
    for (auto& a : amps) {
        a = cplx{dist(rng), dist(rng)};
    }
    return amps;
}

inline nqc::ScaledState random_state(int n_qubits, std::mt19937_64& rng) {
    return nqc::ScaledState(n_qubits, random_amps(n_qubits, rng));
}

using DenseMatrix = std::vector<std::vector<cplx>>;

inline DenseMatrix identity_matrix(std::size_t dim) {
    DenseMatrix m(dim, std::vector<cplx>(dim, cplx{0, 0}));
    for (std::size_t i = 0; i < dim; ++i) {
        m[i][i] = cplx{1, 0};
    }
    return m;
}

// Full 2^n x 2^n lift of a gate, built entry-by-entry from the bit
// action. Independent oracle for the strided kernels.
inline DenseMatrix dense_lift(const nqc::GateOp& op, int n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    DenseMatrix m(dim, std::vector<cplx>(dim, cplx{0, 0}));
    const std::uint64_t tbit = std::uint64_t{1} << op.target;
    if (op.kind == nqc::GateKind::CNOT || op.kind == nqc::GateKind::CG) {
        const auto u4 = nqc::gate_matrix_4x4(op);
        const std::uint64_t cbit = std::uint64_t{1} << *op.control;
        for (std::uint64_t col = 0; col < dim; ++col) {
            const int c = (col & cbit) ? 1 : 0;
            const int t = (col & tbit) ? 1 : 0;
            for (int rc = 0; rc < 2; ++rc) {
                for (int rt = 0; rt < 2; ++rt) {
                    const cplx entry = u4[(rc * 2 + rt) * 4 + (c * 2 + t)];
                    if (entry == cplx{0, 0}) {
                        continue;
                    }
                    std::uint64_t row = col & ~(cbit | tbit);
                    if (rc) row |= cbit;
                    if (rt) row |= tbit;
                    m[row][col] += entry;
                }
            }
        }
    } else {
        const auto u2 = nqc::gate_matrix_2x2(op);
        for (std::uint64_t col = 0; col < dim; ++col) {
            const int t = (col & tbit) ? 1 : 0;
            for (int rt = 0; rt < 2; ++rt) {
                const cplx entry = u2[rt * 2 + t];
                if (entry == cplx{0, 0}) {
                    continue;
                }
                std::uint64_t row = col & ~tbit;
                if (rt) row |= tbit;
                m[row][col] += entry;
            }
        }
    }
    return m;
}

inline std::vector<cplx> dense_apply(const DenseMatrix& m, const std::vector<cplx>& v) {
    std::vector<cplx> out(m.size(), cplx{0, 0});
    for (std::size_t r = 0; r < m.size(); ++r) {
        for (std::size_t c = 0; c < v.size(); ++c) {
            out[r] += m[r][c] * v[c];
        }
    }
    return out;
}

inline DenseMatrix dense_mul(const DenseMatrix& a, const DenseMatrix& b) {
    const std::size_t dim = a.size();
    DenseMatrix out(dim, std::vector<cplx>(dim, cplx{0, 0}));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t k = 0; k < dim; ++k) {
            if (a[i][k] == cplx{0, 0}) {
                continue;
            }
            for (std::size_t j = 0; j < dim; ++j) {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return out;
}

inline double max_entry_distance(const DenseMatrix& a, const DenseMatrix& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            d = std::max(d, std::abs(a[i][j] - b[i][j]));
        }
    }
    return d;
}

// True amplitudes of a scaled state relative to a reference ledger of 0.
inline std::vector<cplx> true_amps(const nqc::ScaledState& s) {
    std::vector<cplx> out = s.amps();
    const double f = std::exp(s.log_scale());
    for (auto& a : out) {
        a *= f;
    }
    return out;
}

// Euclidean distance after normalizing both vectors (phase kept).
inline double normalized_distance(std::vector<cplx> a, std::vector<cplx> b) {
    auto normalize = [](std::vector<cplx>& v) {
        double n2 = 0.0;
        for (const auto& x : v) {
            n2 += std::norm(x);
        }
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& x : v) {
            x *= inv;
        }
    };
    normalize(a);
    normalize(b);
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d2 += std::norm(a[i] - b[i]);
    }
    return std::sqrt(d2);
}

} // namespace nqc_test

#endif
