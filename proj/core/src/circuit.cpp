#include "nqc/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "nqc/rng.hpp"
#include "nqc/sat.hpp"

namespace nqc {

ParseError::ParseError(int line, int column, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ", col " +
                         std::to_string(column) + ": " + msg),
      line(line), column(column) {}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

namespace {

struct Token {
    std::string text;
    int column; // 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> toks;
    size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        if (line[i] == '#') {
            break;
        }
        size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) {
            ++j;
        }
        toks.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return toks;
}

int parse_int(const Token& t, int line_no, const char* what) {
    int v;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
        throw ParseError(line_no, t.column, std::string("expected integer for ") + what +
                                                ", got '" + t.text + "'");
    }
    return v;
}

double parse_float(const Token& t, int line_no, const char* what) {
    double v;
    auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
        throw ParseError(line_no, t.column, std::string("expected number for ") + what +
                                                ", got '" + t.text + "'");
    }
    return v;
}

void expect_arity(const std::vector<Token>& toks, size_t n, int line_no) {
    if (toks.size() != n) {
        throw ParseError(line_no, toks[0].column,
                         "'" + toks[0].text + "' expects " + std::to_string(n - 1) +
                             " argument(s), got " + std::to_string(toks.size() - 1));
    }
}

std::vector<int> touched_qubits(const Instruction& ins, int n_qubits) {
    if (const auto* g = std::get_if<GateOp>(&ins)) {
        std::vector<int> q{g->target};
        if (g->control) {
            q.push_back(*g->control);
        }
        return q;
    }
    if (const auto* o = std::get_if<OracleRef>(&ins)) {
        // Oracle touches the whole work register plus the ancilla. When
        // the formula is not loaded yet, conservatively all qubits.
        std::vector<int> q;
        const int work = o->formula ? o->formula->num_vars : n_qubits - 1;
        for (int i = 0; i < work; ++i) {
            q.push_back(i);
        }
        q.push_back(o->ancilla);
        return q;
    }
    return {std::get<Measure>(ins).qubit};
}

} // namespace

void Circuit::validate() const {
    std::set<int> measured;
    for (const auto& ins : ops) {
        if (const auto* g = std::get_if<GateOp>(&ins)) {
            validate_gate_op(*g, n_qubits);
        } else if (const auto* o = std::get_if<OracleRef>(&ins)) {
            if (o->ancilla < 0 || o->ancilla >= n_qubits) {
                throw std::invalid_argument("oracle ancilla out of range");
            }
            if (o->formula) {
                if (o->formula->num_vars >= n_qubits) {
                    throw std::invalid_argument(
                        "oracle needs a work register plus a distinct ancilla");
                }
                if (o->ancilla < o->formula->num_vars) {
                    throw std::invalid_argument("oracle ancilla overlaps the work register");
                }
            }
        } else {
            const int q = std::get<Measure>(ins).qubit;
            if (q < 0 || q >= n_qubits) {
                throw std::invalid_argument("measured qubit out of range");
            }
            if (measured.count(q)) {
                throw std::invalid_argument("qubit " + std::to_string(q) +
                                            " measured twice");
            }
        }
        for (int q : touched_qubits(ins, n_qubits)) {
            if (!std::holds_alternative<Measure>(ins) && measured.count(q)) {
                throw std::invalid_argument("instruction touches qubit " +
                                            std::to_string(q) + " after its measurement");
            }
        }
        if (const auto* m = std::get_if<Measure>(&ins)) {
            measured.insert(m->qubit);
        }
    }
}

Circuit parse_circuit(const std::string& text) {
    Circuit c;
    bool have_header = false;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty()) {
            continue;
        }
        const std::string& mnem = toks[0].text;
        if (mnem == "qubits") {
            expect_arity(toks, 2, line_no);
            if (have_header) {
                throw ParseError(line_no, toks[0].column, "duplicate 'qubits' line");
            }
            const int n = parse_int(toks[1], line_no, "qubit count");
            if (n < 0 || n > 30) {
                throw ParseError(line_no, toks[1].column, "qubit count out of range [0, 30]");
            }
            c.n_qubits = n;
            have_header = true;
            continue;
        }
        if (!have_header) {
            throw ParseError(line_no, toks[0].column, "first instruction must be 'qubits N'");
        }

        auto qubit_arg = [&](size_t idx, const char* what) {
            const int q = parse_int(toks[idx], line_no, what);
            if (q < 0 || q >= c.n_qubits) {
                throw ParseError(line_no, toks[idx].column,
                                 std::string(what) + " " + std::to_string(q) +
                                     " out of range for " + std::to_string(c.n_qubits) +
                                     " qubits");
            }
            return q;
        };
        auto g_arg = [&](size_t idx) {
            const double g = parse_float(toks[idx], line_no, "g");
            if (!(g > 0.0) || !std::isfinite(g)) {
                throw ParseError(line_no, toks[idx].column, "g must be a positive real");
            }
            if (g == 1.0) {
                throw ParseError(line_no, toks[idx].column, "g must not equal 1");
            }
            return g;
        };

        try {
            if (mnem == "h" || mnem == "t" || mnem == "x") {
                expect_arity(toks, 2, line_no);
                const int q = qubit_arg(1, "qubit");
                const GateKind k = mnem == "h"   ? GateKind::H
                                   : mnem == "t" ? GateKind::T
                                                 : GateKind::X;
                c.ops.push_back(GateOp{k, q, {}, {}, {}});
            } else if (mnem == "cnot") {
                expect_arity(toks, 3, line_no);
                const int ctl = qubit_arg(1, "control");
                const int tgt = qubit_arg(2, "target");
                if (ctl == tgt) {
                    throw ParseError(line_no, toks[2].column, "control equals target");
                }
                c.ops.push_back(GateOp::cnot(ctl, tgt));
            } else if (mnem == "g") {
                expect_arity(toks, 3, line_no);
                const int q = qubit_arg(1, "qubit");
                c.ops.push_back(GateOp::g_gate(q, g_arg(2)));
            } else if (mnem == "cg") {
                expect_arity(toks, 4, line_no);
                const int ctl = qubit_arg(1, "control");
                const int tgt = qubit_arg(2, "target");
                if (ctl == tgt) {
                    throw ParseError(line_no, toks[2].column, "control equals target");
                }
                c.ops.push_back(GateOp::cg(ctl, tgt, g_arg(3)));
            } else if (mnem == "u") {
                expect_arity(toks, 10, line_no);
                const int q = qubit_arg(1, "qubit");
                Mat2 m;
                for (int e = 0; e < 4; ++e) {
                    const double re = parse_float(toks[2 + 2 * e], line_no, "matrix entry");
                    const double im = parse_float(toks[3 + 2 * e], line_no, "matrix entry");
                    m[e] = cplx{re, im};
                }
                c.ops.push_back(GateOp::u2(q, m));
            } else if (mnem == "oracle") {
                // oracle cnf PATH anc Q
                expect_arity(toks, 5, line_no);
                if (toks[1].text != "cnf") {
                    throw ParseError(line_no, toks[1].column,
                                     "only 'oracle cnf PATH anc Q' is supported");
                }
                if (toks[3].text != "anc") {
                    throw ParseError(line_no, toks[3].column, "expected 'anc' keyword");
                }
                OracleRef o;
                o.cnf_path = toks[2].text;
                o.ancilla = qubit_arg(4, "ancilla");
                c.ops.push_back(std::move(o));
            } else if (mnem == "measure") {
                expect_arity(toks, 2, line_no);
                c.ops.push_back(Measure{qubit_arg(1, "qubit")});
            } else {
                throw ParseError(line_no, toks[0].column, "unknown mnemonic '" + mnem + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(line_no, toks[0].column, e.what());
        }
    }
    if (!have_header) {
        throw ParseError(1, 1, "empty circuit: missing 'qubits N'");
    }
    try {
        c.validate();
    } catch (const std::exception& e) {
        throw ParseError(line_no, 1, e.what());
    }
    return c;
}

Circuit load_circuit_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open circuit file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    Circuit c = parse_circuit(buf.str());
    c.source_path = path;
    return c;
}

std::string serialize_circuit(const Circuit& c) {
    std::ostringstream out;
    out << "qubits " << c.n_qubits << '\n';
    for (const auto& ins : c.ops) {
        if (const auto* g = std::get_if<GateOp>(&ins)) {
            switch (g->kind) {
                case GateKind::H:
                case GateKind::T:
                case GateKind::X:
                    out << gate_kind_name(g->kind) << ' ' << g->target << '\n';
                    break;
                case GateKind::CNOT:
                    out << "cnot " << *g->control << ' ' << g->target << '\n';
                    break;
                case GateKind::G:
                    out << "g " << g->target << ' ' << format_double(*g->g) << '\n';
                    break;
                case GateKind::CG:
                    out << "cg " << *g->control << ' ' << g->target << ' '
                        << format_double(*g->g) << '\n';
                    break;
                case GateKind::U2: {
                    out << "u " << g->target;
                    for (const auto& e : *g->matrix) {
                        out << ' ' << format_double(e.real()) << ' '
                            << format_double(e.imag());
                    }
                    out << '\n';
                    break;
                }
            }
        } else if (const auto* o = std::get_if<OracleRef>(&ins)) {
            out << "oracle cnf " << o->cnf_path << " anc " << o->ancilla << '\n';
        } else {
            out << "measure " << std::get<Measure>(ins).qubit << '\n';
        }
    }
    return out.str();
}

namespace {

const CnfFormula& resolve_formula(const OracleRef& o, std::optional<CnfFormula>& cache) {
    if (o.formula) {
        return *o.formula;
    }
    if (!cache) {
        cache = load_dimacs_file(o.cnf_path);
    }
    return *cache;
}

struct ExecContext {
    ScaledState state;
    std::vector<std::optional<CnfFormula>> formula_cache;
};

void exec_instruction(ExecContext& ctx, const Circuit& c, size_t idx) {
    const Instruction& ins = c.ops[idx];
    if (const auto* g = std::get_if<GateOp>(&ins)) {
        apply(ctx.state, *g);
    } else if (const auto* o = std::get_if<OracleRef>(&ins)) {
        const CnfFormula& f = resolve_formula(*o, ctx.formula_cache[idx]);
        if (f.num_vars >= c.n_qubits || o->ancilla < f.num_vars) {
            throw std::invalid_argument("oracle register layout invalid for circuit");
        }
        apply_oracle(ctx.state, f, 0, f.num_vars, o->ancilla);
    }
}

std::vector<int> measured_qubits_sorted(const Circuit& c) {
    std::vector<int> qs;
    for (const auto& ins : c.ops) {
        if (const auto* m = std::get_if<Measure>(&ins)) {
            qs.push_back(m->qubit);
        }
    }
    std::sort(qs.begin(), qs.end());
    return qs;
}

// True when every measure comes after the last gate/oracle; then shot
// sampling can reuse one final state.
bool measures_are_suffix(const Circuit& c) {
    bool seen_measure = false;
    for (const auto& ins : c.ops) {
        if (std::holds_alternative<Measure>(ins)) {
            seen_measure = true;
        } else if (seen_measure) {
            return false;
        }
    }
    return true;
}

} // namespace

RunReport run_exact(const Circuit& c) {
    return run_exact(c, ScaledState::basis(c.n_qubits, 0));
}

RunReport run_exact(const Circuit& c, ScaledState initial) {
    c.validate();
    if (initial.n_qubits() != c.n_qubits) {
        throw std::invalid_argument("initial state qubit count mismatch");
    }
    const auto t0 = std::chrono::steady_clock::now();
    ExecContext ctx{std::move(initial), {}};
    ctx.formula_cache.resize(c.ops.size());
    RunReport rep;
    for (size_t i = 0; i < c.ops.size(); ++i) {
        if (const auto* m = std::get_if<Measure>(&c.ops[i])) {
            auto [p0, p1] = ctx.state.measure_probabilities(m->qubit);
            rep.exact.push_back({m->qubit, p0, p1});
        } else {
            exec_instruction(ctx, c, i);
        }
    }
    std::sort(rep.exact.begin(), rep.exact.end(),
              [](const QubitProbability& a, const QubitProbability& b) {
                  return a.qubit < b.qubit;
              });
    rep.measured_qubits = measured_qubits_sorted(c);
    rep.final_norm_squared = ctx.state.norm_squared();
    rep.wall_time_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
    return rep;
}

RunReport run_shots(const Circuit& c, std::uint64_t shots, std::uint64_t seed) {
    if (shots < 1) {
        throw std::invalid_argument("shots must be >= 1");
    }
    RunReport rep = run_exact(c);
    const auto t0 = std::chrono::steady_clock::now();
    rep.shots = shots;
    rep.seed = seed;
    const auto& mq = rep.measured_qubits;
    if (mq.empty()) {
        rep.shot_counts.clear();
        return rep;
    }

    auto outcome_key = [&](std::uint64_t basis) {
        std::string key(mq.size(), '0');
        for (size_t k = 0; k < mq.size(); ++k) {
            if ((basis >> mq[k]) & 1u) {
                key[k] = '1';
            }
        }
        return key;
    };

    if (measures_are_suffix(c)) {
        // One exact evolution, then inverse-CDF sampling per shot.
        ExecContext ctx{ScaledState::basis(c.n_qubits, 0), {}};
        ctx.formula_cache.resize(c.ops.size());
        for (size_t i = 0; i < c.ops.size(); ++i) {
            if (!std::holds_alternative<Measure>(c.ops[i])) {
                exec_instruction(ctx, c, i);
            }
        }
        const auto& amps = ctx.state.amps();
        std::vector<double> cdf(amps.size());
        double acc = 0.0;
        for (size_t i = 0; i < amps.size(); ++i) {
            acc += std::norm(amps[i]);
            cdf[i] = acc;
        }
        const double total = acc;
        for (std::uint64_t shot = 0; shot < shots; ++shot) {
            ShotRng rng(seed, shot);
            const double u = rng.next_double() * total;
            const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
            const std::uint64_t basis =
                static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(
                    it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
            ++rep.shot_counts[outcome_key(basis)];
        }
    } else {
        // Mid-circuit measurements: full per-shot execution with collapse.
        for (std::uint64_t shot = 0; shot < shots; ++shot) {
            ShotRng rng(seed, shot);
            ExecContext ctx{ScaledState::basis(c.n_qubits, 0), {}};
            ctx.formula_cache.resize(c.ops.size());
            std::uint64_t outcome_bits = 0;
            for (size_t i = 0; i < c.ops.size(); ++i) {
                if (const auto* m = std::get_if<Measure>(&c.ops[i])) {
                    auto [p0, p1] = ctx.state.measure_probabilities(m->qubit);
                    (void)p1;
                    const int bit = rng.next_double() < p0 ? 0 : 1;
                    ctx.state.collapse(m->qubit, bit);
                    if (bit) {
                        outcome_bits |= std::uint64_t{1} << m->qubit;
                    }
                } else {
                    exec_instruction(ctx, c, i);
                }
            }
            ++rep.shot_counts[outcome_key(outcome_bits)];
        }
    }
    rep.wall_time_ms += std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return rep;
}

} // namespace nqc
