#ifndef NQC_DILATION_HPP
#define NQC_DILATION_HPP

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "nqc/circuit.hpp"
#include "nqc/gates.hpp"

namespace nqc {

// One compiled G occurrence: a two-qubit unitary U(eta) on
// (target, ancilla) followed by postselecting the ancilla on |0>.
struct DilationStep {
    int target = 0;
    double eta = 0.0; // = g^-2 of the realized G
};

using DilationInstruction = std::variant<GateOp, DilationStep, OracleRef, Measure>;

// A circuit rewritten so every non-unitary G becomes unitary-plus-
// postselection on one reusable ancilla (the last qubit).
struct DilationProgram {
    int n_qubits = 0;      // original register
    int ancilla = 0;       // = n_qubits, the reused postselection qubit
    std::vector<DilationInstruction> steps;
    std::string source_name;

    std::size_t dilation_step_count() const;
};

// U = [[1,0,0,0],[0,eta,s,0],[0,-s,eta,0],[0,0,0,1]], s = sqrt(1-eta^2),
// in (target, ancilla) ordering with target the high bit.
Mat4 dilation_unitary(double eta);

// eta = g^-2; postselecting ancilla |0> after U(eta) realizes G(g) up
// to the overall scale 1/g.
double compile_g(double g);

// G with g < 1 is rewritten as X G(1/g) X before dilation; CG expands
// through its X/CNOT/G fragment first (inner g = sqrt of the CG
// parameter).
DilationProgram compile_circuit(const Circuit& c);

struct PostselectReport {
    ScaledState final_state;           // renormalized, ancilla traced out
    double log_success = 0.0;          // ln of the cumulative success probability
    std::vector<double> step_success;  // conditional probability per step
    // The r-fold expression printed in the source analysis,
    // [|alpha|^2 + eta^2 |beta|^2]^r, for side-by-side comparison when
    // the program is a homogeneous single-qubit G chain; NaN otherwise.
    double naive_power_expression = 0.0;
    std::uint64_t shots = 0;
    std::uint64_t surviving_shots = 0;
    std::uint64_t discarded_shots = 0;
    std::uint64_t seed = 0;
    std::map<std::string, std::uint64_t> shot_counts; // survivors only
    std::vector<int> measured_qubits;
};

PostselectReport run_postselected_exact(const DilationProgram& p);
PostselectReport run_postselected_exact(const DilationProgram& p, ScaledState initial);

PostselectReport run_postselected_shots(const DilationProgram& p, std::uint64_t shots,
                                        std::uint64_t seed);

// Circuit-format serialization extended with `dilate-step T ETA` lines.
std::string serialize_dilation_program(const DilationProgram& p);

} // namespace nqc

#endif
