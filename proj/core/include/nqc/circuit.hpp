#ifndef NQC_CIRCUIT_HPP
#define NQC_CIRCUIT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nqc/cnf.hpp"
#include "nqc/gates.hpp"
#include "nqc/scaled_state.hpp"

namespace nqc {

// SAT-oracle instruction: flips `ancilla` on every work-register basis
// state that falsifies the formula. The work register is qubits
// 0 .. num_vars-1. The formula may be inlined (tests) or referenced by
// path and loaded on first use.
struct OracleRef {
    std::string cnf_path;
    int ancilla = 0;
    std::optional<CnfFormula> formula;
};

struct Measure {
    int qubit = 0;
};

using Instruction = std::variant<GateOp, OracleRef, Measure>;

struct Circuit {
    int n_qubits = 0;
    std::vector<Instruction> ops;
    std::string name;
    std::string source_path;

    // Structural checks: index ranges, at most one measure per qubit,
    // no instruction touching an already-measured qubit.
    void validate() const;
};

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(int line, int column, const std::string& msg);
};

Circuit parse_circuit(const std::string& text);
Circuit load_circuit_file(const std::string& path);

// Round-trips bit-exactly: floats use shortest round-trip decimals.
std::string serialize_circuit(const Circuit& c);

struct QubitProbability {
    int qubit;
    double p0;
    double p1;
};

struct RunReport {
    std::vector<QubitProbability> exact;      // per measured qubit, at its measure point
    std::map<std::string, std::uint64_t> shot_counts; // key: outcome bits, ascending qubit index
    std::vector<int> measured_qubits;         // ascending
    ScaledState::Norm2 final_norm_squared{1.0, 0.0};
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    double wall_time_ms = 0.0;
};

RunReport run_exact(const Circuit& c);
RunReport run_exact(const Circuit& c, ScaledState initial);

RunReport run_shots(const Circuit& c, std::uint64_t shots, std::uint64_t seed);

// Shortest decimal that parses back to exactly the same double.
std::string format_double(double v);

} // namespace nqc

#endif
