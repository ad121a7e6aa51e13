#include "nqc/cnf.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nqc {

CnfFormula parse_dimacs(const std::string& text, bool strict) {
    CnfFormula f;
    bool have_header = false;
    long long declared_clauses = 0;
    std::vector<int> current;
    bool in_clause = false;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == 'c') {
            continue;
        }
        std::istringstream toks(line);
        std::string tok;
        toks >> tok;
        if (tok.empty()) {
            continue;
        }
        if (tok == "p") {
            if (have_header) {
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": duplicate 'p' header");
            }
            std::string fmt;
            long long n = -1, m = -1;
            toks >> fmt >> n >> m;
            if (fmt != "cnf" || n < 0 || m < 0 || toks.fail()) {
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": malformed 'p cnf <vars> <clauses>' header");
            }
            f.num_vars = static_cast<int>(n);
            declared_clauses = m;
            have_header = true;
            continue;
        }
        if (!have_header) {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": clause before 'p cnf' header");
        }
        // Literal lines; clauses are 0-terminated and may span lines.
        std::istringstream lits(line);
        long long lit;
        while (lits >> lit) {
            if (lit == 0) {
                f.clauses.push_back(current);
                current.clear();
                in_clause = false;
                continue;
            }
            const long long var = lit < 0 ? -lit : lit;
            if (var > f.num_vars) {
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": literal " + std::to_string(lit) +
                                            " exceeds declared variable count " +
                                            std::to_string(f.num_vars));
            }
            current.push_back(static_cast<int>(lit));
            in_clause = true;
        }
        if (lits.fail() && !lits.eof()) {
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": non-integer token in clause");
        }
    }
    if (!have_header) {
        throw std::invalid_argument("missing 'p cnf' header");
    }
    if (in_clause) {
        throw std::invalid_argument("final clause not 0-terminated");
    }
    if (strict && static_cast<long long>(f.clauses.size()) != declared_clauses) {
        throw std::invalid_argument(
            "clause count mismatch: header declares " + std::to_string(declared_clauses) +
            ", found " + std::to_string(f.clauses.size()));
    }
    return f;
}

CnfFormula load_dimacs_file(const std::string& path, bool strict) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open CNF file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dimacs(buf.str(), strict);
}

std::string serialize_dimacs(const CnfFormula& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& clause : f.clauses) {
        for (int lit : clause) {
            out << lit << ' ';
        }
        out << "0\n";
    }
    return out.str();
}

bool eval_formula(const CnfFormula& f, std::uint64_t assignment) {
    for (const auto& clause : f.clauses) {
        bool sat = false;
        for (int lit : clause) {
            const int var = lit < 0 ? -lit : lit;
            const bool val = (assignment >> (var - 1)) & 1u;
            if (val == (lit > 0)) {
                sat = true;
                break;
            }
        }
        if (!sat) {
            return false;
        }
    }
    return true;
}

std::uint64_t brute_force_count(const CnfFormula& f) {
    if (f.num_vars > 24) {
        throw std::invalid_argument("brute force limited to 24 variables");
    }
    const std::uint64_t n = std::uint64_t{1} << f.num_vars;
    std::uint64_t count = 0;
    for (std::uint64_t a = 0; a < n; ++a) {
        count += eval_formula(f, a) ? 1 : 0;
    }
    return count;
}

} // namespace nqc
