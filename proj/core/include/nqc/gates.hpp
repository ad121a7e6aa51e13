#ifndef NQC_GATES_HPP
#define NQC_GATES_HPP

#include <array>
#include <optional>
#include <string>

#include "nqc/scaled_state.hpp"

namespace nqc {

enum class GateKind { H, T, X, CNOT, G, CG, U2 };

std::string gate_kind_name(GateKind kind);

using Mat2 = std::array<cplx, 4>;  // row-major 2x2
using Mat4 = std::array<cplx, 16>; // row-major 4x4

// One circuit instruction. `control` is set for CNOT/CG, `g` for G/CG
// (g > 0, g != 1), `matrix` for the generic single-qubit kind U2.
struct GateOp {
    GateKind kind;
    int target = 0;
    std::optional<int> control;
    std::optional<double> g;
    std::optional<Mat2> matrix;

    static GateOp h(int q) { return {GateKind::H, q, {}, {}, {}}; }
    static GateOp t(int q) { return {GateKind::T, q, {}, {}, {}}; }
    static GateOp x(int q) { return {GateKind::X, q, {}, {}, {}}; }
    static GateOp cnot(int c, int t) { return {GateKind::CNOT, t, c, {}, {}}; }
    static GateOp g_gate(int q, double g) { return {GateKind::G, q, {}, g, {}}; }
    static GateOp cg(int c, int t, double g) { return {GateKind::CG, t, c, g, {}}; }
    static GateOp u2(int q, const Mat2& m) { return {GateKind::U2, q, {}, {}, m}; }
};

// Structural validation; throws std::invalid_argument naming the bad field.
void validate_gate_op(const GateOp& op, int n_qubits);

// The exact 2x2 matrix of a single-qubit kind, including T's global
// phase prefactor (so T^8 = I holds exactly).
Mat2 gate_matrix_2x2(const GateOp& op);

// The 4x4 matrix of CNOT/CG in (control, target) ordering, control high bit.
Mat4 gate_matrix_4x4(const GateOp& op);

// Applies the gate in place; rescales via the ledger when amplitudes
// leave the safe band.
void apply(ScaledState& s, const GateOp& op);

// r successive applications of G(g) on `qubit`, chunked so intermediate
// factors stay in double range. Safe for r up to 10^6.
void apply_g_repeated(ScaledState& s, int qubit, double g, long long r);

} // namespace nqc

#endif
