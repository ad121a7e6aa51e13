#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nqc/cnf.hpp"

using namespace nqc;

TEST_CASE("parse_dimacs") {
    auto f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 2 0\n");
    CHECK(f.num_vars == 2);
    REQUIRE(f.clauses.size() == 2);
    CHECK(f.clauses[0] == std::vector<int>{1, 2});
    CHECK(f.clauses[1] == std::vector<int>{-1, 2});

    SUBCASE("empty clause is representable") {
        auto g = parse_dimacs("p cnf 1 1\n0\n");
        REQUIRE(g.clauses.size() == 1);
        CHECK(g.clauses[0].empty());
        CHECK(brute_force_count(g) == 0);
    }

    SUBCASE("comments and blank lines") {
        auto g = parse_dimacs("c a comment\n\np cnf 1 1\nc another\n1 0\n");
        CHECK(g.num_vars == 1);
        CHECK(g.clauses.size() == 1);
    }

    SUBCASE("clause spanning lines") {
        auto g = parse_dimacs("p cnf 3 1\n1 2\n3 0\n");
        REQUIRE(g.clauses.size() == 1);
        CHECK(g.clauses[0] == std::vector<int>{1, 2, 3});
    }

    SUBCASE("errors") {
        CHECK_THROWS(parse_dimacs("1 2 0\n"));                  // missing header
        CHECK_THROWS(parse_dimacs("p cnf 1 1\n2 0\n"));         // literal out of range
        CHECK_THROWS(parse_dimacs("p cnf 1 1\n1\n"));           // not 0-terminated
        CHECK_THROWS(parse_dimacs("p cnf 2 3\n1 0\n", true));   // strict count mismatch
        CHECK_NOTHROW(parse_dimacs("p cnf 2 3\n1 0\n", false)); // lax by default
    }
}

TEST_CASE("eval_formula") {
    CnfFormula f{2, {{1, 2}, {-1, 2}}};
    CHECK(eval_formula(f, 0b10)); // x1=0, x2=1
    CHECK(!eval_formula(f, 0b01)); // x1=1, x2=0: second clause fails
    CHECK(eval_formula(f, 0b11));

    CnfFormula taut{3, {}};
    for (std::uint64_t a = 0; a < 8; ++a) {
        CHECK(eval_formula(taut, a));
    }
}

TEST_CASE("brute_force_count") {
    CnfFormula f{2, {{1, 2}, {-1, 2}}};
    CHECK(brute_force_count(f) == 2);

    CnfFormula empty_clause{2, {{1}, {}}};
    CHECK(brute_force_count(empty_clause) == 0);

    CnfFormula taut{3, {}};
    CHECK(brute_force_count(taut) == 8);

    CnfFormula too_big{25, {}};
    CHECK_THROWS(brute_force_count(too_big));
}

TEST_CASE("dimacs round-trip is structural identity") {
    const char* texts[] = {
        "p cnf 2 2\n1 2 0\n-1 2 0\n",
        "p cnf 1 1\n0\n",
        "p cnf 3 0\n",
        "c comment\np cnf 4 2\n1 -2 3 0\n-4 0\n",
    };
    for (const char* t : texts) {
        auto f = parse_dimacs(t);
        auto g = parse_dimacs(serialize_dimacs(f));
        CHECK(f.num_vars == g.num_vars);
        CHECK(f.clauses == g.clauses);
    }
}
