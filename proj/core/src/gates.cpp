#include "nqc/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nqc {

std::string gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "h";
        case GateKind::T: return "t";
        case GateKind::X: return "x";
        case GateKind::CNOT: return "cnot";
        case GateKind::G: return "g";
        case GateKind::CG: return "cg";
        case GateKind::U2: return "u";
    }
    return "?";
}

namespace {

bool is_two_qubit(GateKind k) {
    return k == GateKind::CNOT || k == GateKind::CG;
}

bool needs_g(GateKind k) {
    return k == GateKind::G || k == GateKind::CG;
}

// g values outside this band would defeat the rescale trigger.
constexpr double kGMax = 4294967296.0;  // 2^32
constexpr double kGMin = 1.0 / kGMax;

void check_g(double g) {
    if (!std::isfinite(g) || g <= 0.0) {
        throw std::invalid_argument("gate parameter g must be a positive real");
    }
    if (g == 1.0) {
        throw std::invalid_argument("gate parameter g must not equal 1");
    }
    if (g < kGMin || g > kGMax) {
        throw std::invalid_argument("gate parameter g outside [2^-32, 2^32]");
    }
}

} // namespace

void validate_gate_op(const GateOp& op, int n_qubits) {
    if (op.target < 0 || op.target >= n_qubits) {
        throw std::invalid_argument("target qubit out of range");
    }
    if (is_two_qubit(op.kind)) {
        if (!op.control) {
            throw std::invalid_argument(gate_kind_name(op.kind) + " requires a control qubit");
        }
        if (*op.control < 0 || *op.control >= n_qubits) {
            throw std::invalid_argument("control qubit out of range");
        }
        if (*op.control == op.target) {
            throw std::invalid_argument("control and target must differ");
        }
    } else if (op.control) {
        throw std::invalid_argument(gate_kind_name(op.kind) + " takes no control qubit");
    }
    if (needs_g(op.kind)) {
        if (!op.g) {
            throw std::invalid_argument(gate_kind_name(op.kind) + " requires parameter g");
        }
        check_g(*op.g);
    } else if (op.g) {
        throw std::invalid_argument(gate_kind_name(op.kind) + " takes no parameter g");
    }
    if (op.kind == GateKind::U2) {
        if (!op.matrix) {
            throw std::invalid_argument("u requires a 2x2 matrix");
        }
        for (const auto& e : *op.matrix) {
            if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
                throw std::invalid_argument("u matrix entry not finite");
            }
        }
    } else if (op.matrix) {
        throw std::invalid_argument(gate_kind_name(op.kind) + " takes no matrix");
    }
}

Mat2 gate_matrix_2x2(const GateOp& op) {
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    switch (op.kind) {
        case GateKind::H:
            return {cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0},
                    cplx{inv_sqrt2, 0}, cplx{-inv_sqrt2, 0}};
        case GateKind::T: {
            // e^{-i pi/8} diag(e^{i pi/8}, e^{-i pi/8}) = diag(1, e^{-i pi/4})
            const cplx pre = std::polar(1.0, -std::numbers::pi / 8.0);
            return {pre * std::polar(1.0, std::numbers::pi / 8.0), cplx{0, 0},
                    cplx{0, 0}, pre * std::polar(1.0, -std::numbers::pi / 8.0)};
        }
        case GateKind::X:
            return {cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
        case GateKind::G: {
            check_g(*op.g);
            return {cplx{*op.g, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1.0 / *op.g, 0}};
        }
        case GateKind::U2:
            return *op.matrix;
        default:
            throw std::invalid_argument("not a single-qubit gate");
    }
}

Mat4 gate_matrix_4x4(const GateOp& op) {
    Mat4 m{};
    switch (op.kind) {
        case GateKind::CNOT:
            m[0 * 4 + 0] = 1;
            m[1 * 4 + 1] = 1;
            m[2 * 4 + 3] = 1;
            m[3 * 4 + 2] = 1;
            return m;
        case GateKind::CG: {
            check_g(*op.g);
            m[0 * 4 + 0] = 1;
            m[1 * 4 + 1] = 1;
            m[2 * 4 + 2] = *op.g;
            m[3 * 4 + 3] = 1.0 / *op.g;
            return m;
        }
        default:
            throw std::invalid_argument("not a two-qubit gate");
    }
}

namespace {

void apply_2x2(ScaledState& s, int qubit, const Mat2& m) {
    auto& a = s.amps();
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    const std::uint64_t n = a.size();
    for (std::uint64_t i = 0; i < n; ++i) {
        if (i & bit) {
            continue;
        }
        const cplx lo = a[i];
        const cplx hi = a[i | bit];
        a[i] = m[0] * lo + m[1] * hi;
        a[i | bit] = m[2] * lo + m[3] * hi;
    }
}

void apply_cnot(ScaledState& s, int control, int target) {
    auto& a = s.amps();
    const std::uint64_t cbit = std::uint64_t{1} << control;
    const std::uint64_t tbit = std::uint64_t{1} << target;
    for (std::uint64_t i = 0; i < a.size(); ++i) {
        if ((i & cbit) && !(i & tbit)) {
            std::swap(a[i], a[i | tbit]);
        }
    }
}

void apply_controlled_diag(ScaledState& s, int control, int target, double g) {
    auto& a = s.amps();
    const std::uint64_t cbit = std::uint64_t{1} << control;
    const std::uint64_t tbit = std::uint64_t{1} << target;
    const double ginv = 1.0 / g;
    for (std::uint64_t i = 0; i < a.size(); ++i) {
        if (i & cbit) {
            a[i] *= (i & tbit) ? ginv : g;
        }
    }
}

} // namespace

void apply(ScaledState& s, const GateOp& op) {
    validate_gate_op(op, s.n_qubits());
    switch (op.kind) {
        case GateKind::CNOT:
            apply_cnot(s, *op.control, op.target);
            break;
        case GateKind::CG:
            apply_controlled_diag(s, *op.control, op.target, *op.g);
            break;
        default:
            apply_2x2(s, op.target, gate_matrix_2x2(op));
            break;
    }
    s.rescale_if_needed();
}

void apply_g_repeated(ScaledState& s, int qubit, double g, long long r) {
    if (r < 0) {
        throw std::invalid_argument("repeat count must be nonnegative");
    }
    check_g(g);
    if (qubit < 0 || qubit >= s.n_qubits()) {
        throw std::invalid_argument("target qubit out of range");
    }
    // Largest chunk whose factor g^c stays within 2^±32.
    const double abs_ln_g = std::abs(std::log(g));
    const long long chunk = std::max<long long>(
        1, static_cast<long long>(32.0 * std::numbers::ln2 / abs_ln_g));
    auto& a = s.amps();
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    long long left = r;
    while (left > 0) {
        const long long k = std::min(left, chunk);
        const double gk = std::pow(g, static_cast<double>(k));
        const double gk_inv = 1.0 / gk;
        for (std::uint64_t i = 0; i < a.size(); ++i) {
            a[i] *= (i & bit) ? gk_inv : gk;
        }
        s.rescale();
        left -= k;
    }
}

} // namespace nqc
