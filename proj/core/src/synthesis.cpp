#include "nqc/synthesis.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>
#include <unordered_set>

namespace nqc {

std::string synth_case_name(SynthCase c) {
    switch (c) {
        case SynthCase::WITHIN_BAND: return "WITHIN_BAND";
        case SynthCase::GROW: return "GROW";
        case SynthCase::SHRINK: return "SHRINK";
    }
    return "?";
}

Vec2 mat2_apply(const Mat2& m, const Vec2& v) {
    return {m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1]};
}

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

namespace {

double vec_norm(const Vec2& v) {
    return std::sqrt(std::norm(v[0]) + std::norm(v[1]));
}

// Exact unitary sending u/|u| to v/|v| (phases included): map the
// orthonormal frame of u onto the frame of v.
Mat2 rotation_between(const Vec2& u, const Vec2& v) {
    const double nu = vec_norm(u);
    const double nv = vec_norm(v);
    if (nu == 0.0 || nv == 0.0) {
        throw std::invalid_argument("cannot rotate a zero vector");
    }
    const Vec2 uh{u[0] / nu, u[1] / nu};
    const Vec2 vh{v[0] / nv, v[1] / nv};
    const Vec2 up{-std::conj(uh[1]), std::conj(uh[0])};
    const Vec2 vp{-std::conj(vh[1]), std::conj(vh[0])};
    // R = vh uh^dag + vp up^dag
    return {vh[0] * std::conj(uh[0]) + vp[0] * std::conj(up[0]),
            vh[0] * std::conj(uh[1]) + vp[0] * std::conj(up[1]),
            vh[1] * std::conj(uh[0]) + vp[1] * std::conj(up[0]),
            vh[1] * std::conj(uh[1]) + vp[1] * std::conj(up[1])};
}

Mat2 identity2() {
    return {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}};
}

constexpr double kBandEdgeTol = 1e-12;

} // namespace

std::pair<double, double> norm_match_point(double a, double b, double g) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::invalid_argument("norms must be positive");
    }
    if (!(g > 1.0)) {
        throw std::invalid_argument("norm_match_point requires g > 1");
    }
    const double lo = a / g;
    const double hi = a * g;
    if (b < lo * (1.0 - 1e-9) || b > hi * (1.0 + 1e-9)) {
        throw std::domain_error("target norm outside [A/g, A*g]");
    }
    const double g2 = g * g;
    const double gm2 = 1.0 / g2;
    // |c1|^2 = t solves g^2 t + (A^2 - t)/g^2 = B^2.
    double t = (b * b - gm2 * a * a) / (g2 - gm2);
    t = std::min(std::max(t, 0.0), a * a);
    return {std::sqrt(t), std::sqrt(a * a - t)};
}

SynthesisPlan plan_single_qubit(const Vec2& initial, const Vec2& final_state, double g) {
    if (!(g > 1.0)) {
        throw std::invalid_argument("plan_single_qubit requires g > 1");
    }
    const double a = vec_norm(initial);
    const double b = vec_norm(final_state);
    if (a == 0.0 || b == 0.0) {
        throw std::invalid_argument("zero-length state");
    }
    const double ratio = b / a;
    const double ln_g = std::log(g);

    SynthesisPlan plan;
    plan.g = g;

    Vec2 after_pre;     // state right after the pre stage and G^r
    if (ratio > g * (1.0 + kBandEdgeTol)) {
        plan.case_tag = SynthCase::GROW;
        plan.r = static_cast<long long>(std::floor(std::log(ratio) / ln_g));
        plan.pre_rotation = rotation_between(initial, Vec2{cplx{1, 0}, cplx{0, 0}});
        after_pre = {cplx{std::pow(g, static_cast<double>(plan.r)) * a, 0}, cplx{0, 0}};
    } else if (ratio < (1.0 / g) * (1.0 - kBandEdgeTol)) {
        plan.case_tag = SynthCase::SHRINK;
        plan.r = static_cast<long long>(std::floor(-std::log(ratio) / ln_g));
        plan.pre_rotation = rotation_between(initial, Vec2{cplx{0, 0}, cplx{1, 0}});
        after_pre = {cplx{0, 0}, cplx{std::pow(g, static_cast<double>(-plan.r)) * a, 0}};
    } else {
        plan.case_tag = SynthCase::WITHIN_BAND;
        plan.r = 0;
        plan.pre_rotation = identity2();
        after_pre = initial;
    }

    const double a_cur = vec_norm(after_pre);
    auto [c1, c2] = norm_match_point(a_cur, b, g);
    const Vec2 match{cplx{c1, 0}, cplx{c2, 0}};
    plan.mid_rotation = rotation_between(after_pre, match);
    const Vec2 after_g{cplx{g * c1, 0}, cplx{c2 / g, 0}};
    plan.post_rotation = rotation_between(after_g, final_state);
    return plan;
}

Vec2 execute_plan(const SynthesisPlan& plan, const Vec2& initial) {
    Vec2 v = mat2_apply(plan.pre_rotation, initial);
    const double ginv = 1.0 / plan.g;
    for (long long i = 0; i < plan.r; ++i) {
        v[0] *= plan.g;
        v[1] *= ginv;
    }
    v = mat2_apply(plan.mid_rotation, v);
    v[0] *= plan.g;
    v[1] *= ginv;
    return mat2_apply(plan.post_rotation, v);
}

Circuit build_cg_from_primitives(double g) {
    if (!(g > 0.0) || g == 1.0 || !std::isfinite(g)) {
        throw std::invalid_argument("g must be a positive real != 1");
    }
    Circuit c;
    c.n_qubits = 2;
    c.name = "cg-from-primitives";
    const int control = 1; // high bit under little-endian indexing
    const int target = 0;
    c.ops.push_back(GateOp::x(control));
    c.ops.push_back(GateOp::cnot(control, target));
    c.ops.push_back(GateOp::g_gate(target, g));
    c.ops.push_back(GateOp::cnot(control, target));
    c.ops.push_back(GateOp::x(control));
    c.ops.push_back(GateOp::g_gate(target, g));
    return c;
}

double phase_invariant_distance(const Mat2& u, const Mat2& v) {
    // W = U^dag V is unitary; the optimal global phase centers its
    // eigenphases, leaving distance 2 sin(separation / 4).
    const Mat2 udag{std::conj(u[0]), std::conj(u[2]), std::conj(u[1]), std::conj(u[3])};
    const Mat2 w = mat2_mul(udag, v);
    const cplx tr = w[0] + w[3];
    const cplx det = w[0] * w[3] - w[1] * w[2];
    const cplx disc = std::sqrt(tr * tr - 4.0 * det);
    const cplx l1 = (tr + disc) * 0.5;
    const cplx l2 = (tr - disc) * 0.5;
    double sep = std::abs(std::arg(l1 / l2));
    return 2.0 * std::sin(sep / 4.0);
}

namespace {

Mat2 h_matrix() {
    return gate_matrix_2x2(GateOp::h(0));
}
Mat2 t_matrix() {
    return gate_matrix_2x2(GateOp::t(0));
}

// Phase-canonical quantized key for visited-set dedup.
std::string canonical_key(const Mat2& m) {
    cplx ref{0, 0};
    for (const auto& e : m) {
        if (std::abs(e) > 1e-9) {
            ref = e;
            break;
        }
    }
    const cplx phase = std::abs(ref) > 0 ? std::conj(ref) / std::abs(ref) : cplx{1, 0};
    std::string key;
    key.reserve(64);
    char buf[16];
    for (const auto& e : m) {
        const cplx c = e * phase;
        std::snprintf(buf, sizeof(buf), "%.8f", c.real());
        key += buf;
        std::snprintf(buf, sizeof(buf), "%.8f", c.imag());
        key += buf;
    }
    return key;
}

} // namespace

HtApproximation approximate_unitary_ht(const Mat2& target, int max_depth) {
    if (max_depth < 0 || max_depth > 24) {
        throw std::invalid_argument("max_depth must be in [0, 24]");
    }
    const Mat2 mh = h_matrix();
    const Mat2 mt = t_matrix();

    struct Node {
        Mat2 m;
        std::string word;
        int t_run; // trailing T count, capped to avoid T^8 = I loops
    };

    HtApproximation best;
    best.word = "";
    best.error = phase_invariant_distance(identity2(), target);

    std::vector<Node> frontier{{identity2(), "", 0}};
    std::unordered_set<std::string> seen;
    seen.insert(canonical_key(identity2()));

    for (int depth = 1; depth <= max_depth; ++depth) {
        std::vector<Node> next;
        next.reserve(frontier.size() * 2);
        for (const auto& node : frontier) {
            // Children in H-then-T order keeps ties lexicographic.
            const bool last_h = !node.word.empty() && node.word.back() == 'H';
            if (!last_h) { // H H = I, skip
                Node child{mat2_mul(mh, node.m), node.word + 'H', 0};
                if (seen.insert(canonical_key(child.m)).second) {
                    const double err = phase_invariant_distance(child.m, target);
                    if (err < best.error - 1e-15) {
                        best = {child.word, err};
                    }
                    next.push_back(std::move(child));
                }
            }
            if (node.t_run < 7) { // T^8 = I, skip
                Node child{mat2_mul(mt, node.m), node.word + 'T', node.t_run + 1};
                if (seen.insert(canonical_key(child.m)).second) {
                    const double err = phase_invariant_distance(child.m, target);
                    if (err < best.error - 1e-15) {
                        best = {child.word, err};
                    }
                    next.push_back(std::move(child));
                }
            }
        }
        frontier = std::move(next);
        if (best.error < 1e-12) {
            break;
        }
    }
    return best;
}

} // namespace nqc
