#ifndef NQC_CNF_HPP
#define NQC_CNF_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace nqc {

// Boolean formula in conjunctive normal form. Literal k means variable
// |k| (1-based), negated when k < 0. An empty clause list is the
// tautology; a formula containing an empty clause is unsatisfiable.
struct CnfFormula {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;
};

// Standard DIMACS CNF. With strict=true a clause count differing from
// the 'p cnf' header is an error; otherwise it is accepted.
CnfFormula parse_dimacs(const std::string& text, bool strict = false);
CnfFormula load_dimacs_file(const std::string& path, bool strict = false);

std::string serialize_dimacs(const CnfFormula& f);

// Bit k-1 of `assignment` is the value of variable k.
bool eval_formula(const CnfFormula& f, std::uint64_t assignment);

// Exact model count by enumeration; the independent oracle for all
// probability checks. Guarded at n <= 24.
std::uint64_t brute_force_count(const CnfFormula& f);

} // namespace nqc

#endif
