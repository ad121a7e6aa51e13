#include "nqc/dilation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nqc/rng.hpp"
#include "nqc/sat.hpp"

namespace nqc {

std::size_t DilationProgram::dilation_step_count() const {
    std::size_t n = 0;
    for (const auto& s : steps) {
        if (std::holds_alternative<DilationStep>(s)) {
            ++n;
        }
    }
    return n;
}

Mat4 dilation_unitary(double eta) {
    if (!(eta > 0.0) || !(eta < 1.0)) {
        throw std::invalid_argument("eta must lie in (0, 1)");
    }
    const double s = std::sqrt(1.0 - eta * eta);
    Mat4 u{};
    u[0 * 4 + 0] = 1;
    u[1 * 4 + 1] = eta;
    u[1 * 4 + 2] = s;
    u[2 * 4 + 1] = -s;
    u[2 * 4 + 2] = eta;
    u[3 * 4 + 3] = 1;
    return u;
}

double compile_g(double g) {
    if (!(g > 1.0)) {
        throw std::invalid_argument("direct dilation requires g > 1");
    }
    return 1.0 / (g * g);
}

namespace {

void compile_gate(std::vector<DilationInstruction>& out, const GateOp& g) {
    switch (g.kind) {
        case GateKind::G: {
            const double gv = *g.g;
            if (gv > 1.0) {
                out.push_back(DilationStep{g.target, compile_g(gv)});
            } else {
                // G(g) with g < 1 equals X G(1/g) X.
                out.push_back(GateOp::x(g.target));
                out.push_back(DilationStep{g.target, compile_g(1.0 / gv)});
                out.push_back(GateOp::x(g.target));
            }
            break;
        }
        case GateKind::CG: {
            // Expand through the X/CNOT/G fragment; its composite is
            // C-G(inner^2), so inner = sqrt of the requested parameter.
            const double inner = std::sqrt(*g.g);
            const int c = *g.control;
            const int t = g.target;
            out.push_back(GateOp::x(c));
            out.push_back(GateOp::cnot(c, t));
            compile_gate(out, GateOp::g_gate(t, inner));
            out.push_back(GateOp::cnot(c, t));
            out.push_back(GateOp::x(c));
            compile_gate(out, GateOp::g_gate(t, inner));
            break;
        }
        default:
            out.push_back(g);
            break;
    }
}

} // namespace

DilationProgram compile_circuit(const Circuit& c) {
    c.validate();
    DilationProgram p;
    p.n_qubits = c.n_qubits;
    p.ancilla = c.n_qubits;
    p.source_name = c.name;
    for (const auto& ins : c.ops) {
        if (const auto* g = std::get_if<GateOp>(&ins)) {
            compile_gate(p.steps, *g);
        } else if (const auto* o = std::get_if<OracleRef>(&ins)) {
            p.steps.push_back(*o);
        } else {
            p.steps.push_back(std::get<Measure>(ins));
        }
    }
    return p;
}

namespace {

// Dense 4x4 application on (high = target, low = ancilla).
void apply_two_qubit(ScaledState& s, int high, int low, const Mat4& u) {
    auto& a = s.amps();
    const std::uint64_t hbit = std::uint64_t{1} << high;
    const std::uint64_t lbit = std::uint64_t{1} << low;
    for (std::uint64_t i = 0; i < a.size(); ++i) {
        if (i & (hbit | lbit)) {
            continue;
        }
        const std::uint64_t i00 = i;
        const std::uint64_t i01 = i | lbit;
        const std::uint64_t i10 = i | hbit;
        const std::uint64_t i11 = i | hbit | lbit;
        const cplx v[4] = {a[i00], a[i01], a[i10], a[i11]};
        for (int row = 0; row < 4; ++row) {
            cplx acc{0, 0};
            for (int col = 0; col < 4; ++col) {
                acc += u[row * 4 + col] * v[col];
            }
            const std::uint64_t idx[4] = {i00, i01, i10, i11};
            a[idx[row]] = acc;
        }
    }
    s.rescale_if_needed();
}

ScaledState extend_with_ancilla(const ScaledState& s) {
    std::vector<cplx> amps(s.dim() * 2, cplx{0, 0});
    for (std::uint64_t i = 0; i < s.dim(); ++i) {
        amps[i] = s.amps()[i];
    }
    return ScaledState(s.n_qubits() + 1, std::move(amps), s.log_scale());
}

ScaledState drop_ancilla_and_renormalize(const ScaledState& s) {
    const std::uint64_t half = s.dim() / 2;
    std::vector<cplx> amps(s.amps().begin(), s.amps().begin() + half);
    double norm2 = 0.0;
    for (const auto& a : amps) {
        norm2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : amps) {
        a *= inv;
    }
    return ScaledState(s.n_qubits() - 1, std::move(amps), 0.0);
}

double naive_power(const DilationProgram& p, const ScaledState& initial) {
    // Only meaningful when the dilation steps form one homogeneous chain
    // on a single-qubit register; a unitary prefix before the chain is
    // folded into (alpha, beta).
    if (p.n_qubits != 1) {
        return std::nan("");
    }
    ScaledState pre = initial;
    double eta = -1.0;
    int target = -1;
    std::size_t r = 0;
    for (const auto& s : p.steps) {
        if (const auto* d = std::get_if<DilationStep>(&s)) {
            if (eta >= 0.0 && (d->eta != eta || d->target != target)) {
                return std::nan("");
            }
            eta = d->eta;
            target = d->target;
            ++r;
        } else if (const auto* g = std::get_if<GateOp>(&s)) {
            if (r > 0) {
                return std::nan(""); // gates interleaved with the chain
            }
            apply(pre, *g);
        } else if (!std::holds_alternative<Measure>(s)) {
            return std::nan("");
        }
    }
    if (r == 0) {
        return 1.0;
    }
    const auto n2 = pre.norm_squared();
    const double total = n2.mantissa * std::exp(n2.log_part - 2.0 * pre.log_scale());
    const double a2 = std::norm(pre.amps()[0]) / total;
    const double b2 = std::norm(pre.amps()[1]) / total;
    return std::pow(a2 + eta * eta * b2, static_cast<double>(r));
}

} // namespace

PostselectReport run_postselected_exact(const DilationProgram& p) {
    return run_postselected_exact(p, ScaledState::basis(p.n_qubits, 0));
}

PostselectReport run_postselected_exact(const DilationProgram& p, ScaledState initial) {
    if (initial.n_qubits() != p.n_qubits) {
        throw std::invalid_argument("initial state qubit count mismatch");
    }
    PostselectReport rep{ScaledState::basis(1, 0)};
    rep.naive_power_expression = naive_power(p, initial);

    ScaledState state = extend_with_ancilla(initial);
    int step_index = 0;
    for (const auto& ins : p.steps) {
        if (const auto* g = std::get_if<GateOp>(&ins)) {
            apply(state, *g);
        } else if (const auto* o = std::get_if<OracleRef>(&ins)) {
            const CnfFormula f = o->formula ? *o->formula : load_dimacs_file(o->cnf_path);
            apply_oracle(state, f, 0, f.num_vars, o->ancilla);
        } else if (const auto* d = std::get_if<DilationStep>(&ins)) {
            ++step_index;
            apply_two_qubit(state, d->target, p.ancilla, dilation_unitary(d->eta));
            auto [p0, p1] = state.measure_probabilities(p.ancilla);
            (void)p1;
            if (p0 <= 0.0) {
                throw std::domain_error("postselection impossible at dilation step " +
                                        std::to_string(step_index));
            }
            rep.step_success.push_back(p0);
            rep.log_success += std::log(p0);
            state.collapse(p.ancilla, 0);
        } else {
            rep.measured_qubits.push_back(std::get<Measure>(ins).qubit);
        }
    }
    rep.final_state = drop_ancilla_and_renormalize(state);
    return rep;
}

PostselectReport run_postselected_shots(const DilationProgram& p, std::uint64_t shots,
                                        std::uint64_t seed) {
    if (shots < 1) {
        throw std::invalid_argument("shots must be >= 1");
    }
    PostselectReport rep = run_postselected_exact(p);
    rep.shots = shots;
    rep.seed = seed;

    std::vector<int> mq = rep.measured_qubits;
    std::sort(mq.begin(), mq.end());

    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        ShotRng rng(seed, shot);
        ScaledState state = extend_with_ancilla(ScaledState::basis(p.n_qubits, 0));
        bool survived = true;
        std::uint64_t outcome_bits = 0;
        for (const auto& ins : p.steps) {
            if (const auto* g = std::get_if<GateOp>(&ins)) {
                apply(state, *g);
            } else if (const auto* o = std::get_if<OracleRef>(&ins)) {
                const CnfFormula f = o->formula ? *o->formula : load_dimacs_file(o->cnf_path);
                apply_oracle(state, f, 0, f.num_vars, o->ancilla);
            } else if (const auto* d = std::get_if<DilationStep>(&ins)) {
                apply_two_qubit(state, d->target, p.ancilla, dilation_unitary(d->eta));
                auto [p0, p1] = state.measure_probabilities(p.ancilla);
                (void)p1;
                if (rng.next_double() < p0) {
                    state.collapse(p.ancilla, 0);
                } else {
                    survived = false;
                    break;
                }
            } else {
                const int q = std::get<Measure>(ins).qubit;
                auto [p0, p1] = state.measure_probabilities(q);
                (void)p1;
                const int bit = rng.next_double() < p0 ? 0 : 1;
                state.collapse(q, bit);
                if (bit) {
                    outcome_bits |= std::uint64_t{1} << q;
                }
            }
        }
        if (survived) {
            ++rep.surviving_shots;
            if (!mq.empty()) {
                std::string key(mq.size(), '0');
                for (size_t k = 0; k < mq.size(); ++k) {
                    if ((outcome_bits >> mq[k]) & 1u) {
                        key[k] = '1';
                    }
                }
                ++rep.shot_counts[key];
            }
        } else {
            ++rep.discarded_shots;
        }
    }
    return rep;
}

std::string serialize_dilation_program(const DilationProgram& p) {
    std::ostringstream out;
    out << "# dilated program; postselection ancilla is qubit " << p.ancilla << '\n';
    out << "qubits " << (p.n_qubits + 1) << '\n';
    for (const auto& ins : p.steps) {
        if (const auto* g = std::get_if<GateOp>(&ins)) {
            Circuit tmp;
            tmp.n_qubits = p.n_qubits + 1;
            tmp.ops.push_back(*g);
            const std::string s = serialize_circuit(tmp);
            out << s.substr(s.find('\n') + 1);
        } else if (const auto* o = std::get_if<OracleRef>(&ins)) {
            out << "oracle cnf " << o->cnf_path << " anc " << o->ancilla << '\n';
        } else if (const auto* d = std::get_if<DilationStep>(&ins)) {
            out << "dilate-step " << d->target << ' ' << format_double(d->eta) << '\n';
        } else {
            out << "measure " << std::get<Measure>(ins).qubit << '\n';
        }
    }
    return out.str();
}

} // namespace nqc
