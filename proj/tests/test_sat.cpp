#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "nqc/gates.hpp"
#include "nqc/sat.hpp"

using namespace nqc;
using namespace nqc_test;

namespace {

CnfFormula random_3cnf(int n, int m, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> vd(1, n);
    CnfFormula f;
    f.num_vars = n;
    const std::size_t width = static_cast<std::size_t>(std::min(3, n));
    for (int c = 0; c < m; ++c) {
        std::vector<int> clause;
        while (clause.size() < width) {
            int v = vd(rng);
            bool dup = false;
            for (int lit : clause) {
                if (std::abs(lit) == v) {
                    dup = true;
                }
            }
            if (!dup) {
                clause.push_back((rng() & 1) ? v : -v);
            }
        }
        f.clauses.push_back(clause);
    }
    return f;
}

ScaledState uniform_with_ancilla(int n) {
    ScaledState s = ScaledState::basis(n + 1, 0);
    for (int q = 0; q < n; ++q) {
        apply(s, GateOp::h(q));
    }
    return s;
}

} // namespace

TEST_CASE("oracle splits solutions and non-solutions") {
    CnfFormula f{2, {{1, 2}, {-1, 2}}}; // K = 2: assignments 10, 11 (x2 = 1)
    auto s = uniform_with_ancilla(2);
    apply_oracle(s, f, 0, 2, 2);
    const auto amps = true_amps(s);
    // ancilla bit = qubit 2; solutions keep ancilla 0, others flip to 1
    for (std::uint64_t j = 0; j < 4; ++j) {
        const bool sat = eval_formula(f, j);
        CHECK(std::abs(amps[j]) == doctest::Approx(sat ? 0.5 : 0.0));
        CHECK(std::abs(amps[j | 4]) == doctest::Approx(sat ? 0.0 : 0.5));
    }
}

TEST_CASE("oracle is the identity on a tautology") {
    CnfFormula taut{2, {}};
    auto s = uniform_with_ancilla(2);
    const auto before = true_amps(s);
    apply_oracle(s, taut, 0, 2, 2);
    const auto after = true_amps(s);
    for (std::size_t i = 0; i < before.size(); ++i) {
        CHECK(after[i] == before[i]);
    }
}

TEST_CASE("oracle is a unitary involution") {
    std::mt19937_64 rng(606);
    CnfFormula f = random_3cnf(4, 6, rng);
    for (int trial = 0; trial < 10; ++trial) {
        auto s = random_state(5, rng);
        const auto before = true_amps(s);
        const auto n_before = s.norm_squared().log_value();
        apply_oracle(s, f, 0, 4, 4);
        CHECK(std::abs(s.norm_squared().log_value() - n_before) <= 1e-12);
        apply_oracle(s, f, 0, 4, 4);
        const auto after = true_amps(s);
        for (std::size_t i = 0; i < before.size(); ++i) {
            CHECK(std::abs(after[i] - before[i]) <=
                  1e-12 * std::max(1.0, std::abs(before[i])));
        }
    }

    auto overlap = ScaledState::basis(5, 0);
    CHECK_THROWS(apply_oracle(overlap, f, 0, 4, 2));
}

TEST_CASE("post-oracle support matches the solution set") {
    std::mt19937_64 rng(17);
    for (int n = 2; n <= 8; ++n) {
        CnfFormula f = random_3cnf(n, 2 * n, rng);
        auto s = uniform_with_ancilla(n);
        apply_oracle(s, f, 0, n, n);
        const auto amps = true_amps(s);
        const std::uint64_t abit = std::uint64_t{1} << n;
        for (std::uint64_t j = 0; j < (std::uint64_t{1} << n); ++j) {
            const bool sat = eval_formula(f, j);
            CHECK((std::abs(amps[j]) > 0) == sat);
            CHECK((std::abs(amps[j | abit]) > 0) == !sat);
        }
    }
}

TEST_CASE("choose_r") {
    CHECK(choose_r(2, 2.0) == 2);
    CHECK(choose_r(10, 2.0) == 10);
    CHECK(choose_r(4, 4.0) == 2);
    CHECK(choose_r(0, 2.0) == 0);
    CHECK(choose_r(3, 1.5) == 6); // ceil(3 ln2 / ln 1.5) = ceil(5.128) = 6
    CHECK_THROWS(choose_r(2, 1.0));
    CHECK_THROWS(choose_r(2, 0.5));
}

TEST_CASE("closed_form_p") {
    CHECK(closed_form_p(4, 1, 2.0, 2) == doctest::Approx(256.0 / 259.0).epsilon(1e-14));
    CHECK(closed_form_p(1024, 0, 2.0, 10) == 0.0);
    CHECK(closed_form_p(16, 16, 2.0, 3) == 1.0);
    // no overflow for huge exponents
    const double p = closed_form_p(std::uint64_t{1} << 20, 1, 2.0, 1000000);
    CHECK(p == 1.0);
    CHECK_THROWS(closed_form_p(4, 5, 2.0, 1));
}

TEST_CASE("solve_sat decisions") {
    SUBCASE("satisfiable instance") {
        CnfFormula f{2, {{1, 2}, {-1, 2}}};
        SatOptions opt;
        opt.r = 2;
        auto rep = solve_sat(f, opt);
        // K = 2: P = 2*16 / (2*16 + 2/16) = 32/32.125
        CHECK(rep.p_accept == doctest::Approx(32.0 / 32.125).epsilon(1e-12));
        CHECK(rep.decision == SatDecision::SAT);
    }

    SUBCASE("unsatisfiable instance is exactly rejected") {
        CnfFormula f{1, {{1}, {-1}}};
        auto rep = solve_sat(f);
        CHECK(rep.p_accept == 0.0);
        CHECK(rep.decision == SatDecision::UNSAT);
    }

    SUBCASE("tautology accepts with certainty") {
        CnfFormula f{1, {}};
        auto rep = solve_sat(f);
        CHECK(rep.p_accept == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(rep.decision == SatDecision::SAT);
    }

    SUBCASE("capacity guard") {
        CnfFormula f{30, {}};
        CHECK_THROWS(solve_sat(f));
    }
}

TEST_CASE("simulated probability matches the closed form") {
    std::mt19937_64 rng(1001);
    const double gs[] = {1.5, 2.0, 4.0};
    for (int trial = 0; trial < 12; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 9); // up to 10
        CnfFormula f = random_3cnf(n, 3 * n, rng);
        const std::uint64_t k = brute_force_count(f);
        const std::uint64_t big_n = std::uint64_t{1} << n;
        for (double g : gs) {
            for (long long r : {0LL, 1LL, choose_r(n, g)}) {
                SatOptions opt;
                opt.g = g;
                opt.r = r;
                auto rep = solve_sat(f, opt);
                CHECK(std::abs(rep.p_accept - closed_form_p(big_n, k, g, r)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("decision bound with the default r") {
    std::mt19937_64 rng(2002);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        CnfFormula f = random_3cnf(n, 2 * n, rng);
        if (brute_force_count(f) == 0) {
            continue;
        }
        auto rep = solve_sat(f);
        const double big_n = static_cast<double>(std::uint64_t{1} << n);
        CHECK(rep.p_accept >= big_n / (big_n + 1.0) - 1e-12);
        CHECK(rep.p_accept > 2.0 / 3.0);
    }
}

TEST_CASE("p_accept is nondecreasing in r for satisfiable formulas") {
    CnfFormula f{3, {{1, 2, 3}, {-1, 2, -3}}};
    double prev = -1.0;
    for (long long r = 0; r <= 8; ++r) {
        SatOptions opt;
        opt.r = r;
        auto rep = solve_sat(f, opt);
        CHECK(rep.p_accept >= prev);
        prev = rep.p_accept;
    }
}

TEST_CASE("count_models") {
    SUBCASE("exact inversion matches brute force") {
        std::mt19937_64 rng(3003);
        for (int trial = 0; trial < 15; ++trial) {
            const int n = 2 + static_cast<int>(rng() % 7); // up to 8
            CnfFormula f = random_3cnf(n, 2 * n + 1, rng);
            auto res = count_models(f, 2.0, std::nullopt);
            CHECK(res.k == brute_force_count(f));
        }
    }

    SUBCASE("unsatisfiable gives zero") {
        CnfFormula f{2, {{1}, {-1}}};
        auto res = count_models(f, 2.0, std::nullopt);
        CHECK(res.k == 0);
    }

    SUBCASE("r = 0 sampling brackets the count") {
        CnfFormula f{3, {{1, 2, 3}}}; // K = 7 of 8
        auto res = count_models(f, 2.0, std::nullopt, 200000, 11);
        REQUIRE(res.interval.has_value());
        CHECK(res.interval->first <= 7);
        CHECK(res.interval->second >= 7);
        CHECK(res.k == 7);
    }

    SUBCASE("sampled mode flags non-invertible extremes") {
        CnfFormula f{2, {{1}, {-1}}}; // UNSAT: every shot rejects
        auto res = count_models(f, 2.0, std::nullopt, 1000, 3);
        CHECK(!res.invertible);
        CHECK(res.k == 0);
    }
}
