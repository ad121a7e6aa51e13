#ifndef NQC_SYNTHESIS_HPP
#define NQC_SYNTHESIS_HPP

#include <array>
#include <string>

#include "nqc/circuit.hpp"
#include "nqc/gates.hpp"

namespace nqc {

using Vec2 = std::array<cplx, 2>;

enum class SynthCase { WITHIN_BAND, GROW, SHRINK };

std::string synth_case_name(SynthCase c);

// Single-qubit non-unitary synthesis plan. Execution order:
//   pre_rotation, G^r, mid_rotation, one G (norm-matching), post_rotation.
// The three rotations are exact analytic unitaries; r = 0 when the
// target norm ratio already lies in [1/g, g].
struct SynthesisPlan {
    SynthCase case_tag = SynthCase::WITHIN_BAND;
    long long r = 0;
    Mat2 pre_rotation;
    Mat2 mid_rotation;
    Mat2 post_rotation;
    double g = 2.0;
};

// Real nonnegative (|c1|, |c2|) on the sphere of radius A with
// sqrt(|g c1|^2 + |c2/g|^2) = B. Requires B within [A/g, A*g].
std::pair<double, double> norm_match_point(double a, double b, double g);

SynthesisPlan plan_single_qubit(const Vec2& initial, const Vec2& final_state, double g);

Vec2 execute_plan(const SynthesisPlan& plan, const Vec2& initial);

Vec2 mat2_apply(const Mat2& m, const Vec2& v);
Mat2 mat2_mul(const Mat2& a, const Mat2& b);

// The two-qubit fragment realizing C-G(g^2) from X, CNOT and G(g):
// X on control, CNOT, G on target, CNOT, X on control, G on target.
// Composite matrix is diag(1, 1, g^2, g^-2) with control the high bit
// (control = qubit 1, target = qubit 0).
Circuit build_cg_from_primitives(double g);

struct HtApproximation {
    std::string word;   // gate sequence, applied left to right
    double error = 0.0; // phase-invariant operator-norm distance
};

// Breadth-first shortest-word search over {H, T} strings, ties broken
// lexicographically with H < T. Exhaustive, so max_depth is capped.
HtApproximation approximate_unitary_ht(const Mat2& target, int max_depth);

// Distance up to global phase: min over phi of ||U - e^{i phi} V||_op.
double phase_invariant_distance(const Mat2& u, const Mat2& v);

} // namespace nqc

#endif
