#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "nqc/scaled_state.hpp"

using namespace nqc;
using nqc_test::random_state;

TEST_CASE("basis state construction") {
    auto s = ScaledState::basis(1, 0);
    CHECK(s.amps()[0] == cplx{1, 0});
    CHECK(s.amps()[1] == cplx{0, 0});
    CHECK(s.log_scale() == 0.0);

    auto s2 = ScaledState::basis(2, 3);
    CHECK(s2.amps()[3] == cplx{1, 0});
    CHECK(s2.amps()[0] == cplx{0, 0});

    // empty register: a single scalar amplitude
    auto s0 = ScaledState::basis(0, 0);
    CHECK(s0.dim() == 1);
    CHECK(s0.amps()[0] == cplx{1, 0});

    CHECK_THROWS(ScaledState::basis(1, 2));
    CHECK_THROWS(ScaledState(1, {cplx{0, 0}, cplx{0, 0}}));
}

TEST_CASE("norm_squared splits mantissa and log part") {
    auto s = ScaledState::basis(1, 0);
    auto n = s.norm_squared();
    CHECK(n.mantissa * std::exp(n.log_part) == doctest::Approx(1.0).epsilon(1e-14));

    ScaledState s2(1, {cplx{3, 0}, cplx{4, 0}});
    auto n2 = s2.norm_squared();
    CHECK(n2.mantissa >= 1.0);
    CHECK(n2.mantissa < std::exp(1.0));
    CHECK(n2.mantissa * std::exp(n2.log_part) == doctest::Approx(25.0).epsilon(1e-14));

    ScaledState s3(1, {cplx{1, 0}, cplx{0, 0}}, std::log(2.0));
    auto n3 = s3.norm_squared();
    CHECK(n3.mantissa * std::exp(n3.log_part) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("measure_probabilities") {
    ScaledState s(1, {cplx{3, 0}, cplx{4, 0}});
    auto [p0, p1] = s.measure_probabilities(0);
    CHECK(p0 == doctest::Approx(9.0 / 25.0).epsilon(1e-14));
    CHECK(p1 == doctest::Approx(16.0 / 25.0).epsilon(1e-14));

    ScaledState s2(1, {cplx{1, 0}, cplx{1, 0}});
    auto [q0, q1] = s2.measure_probabilities(0);
    CHECK(q0 == doctest::Approx(0.5));
    CHECK(q1 == doctest::Approx(0.5));

    // marginal over basis indices, little-endian qubit 0
    ScaledState s3(2, {cplx{2, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}});
    auto [r0, r1] = s3.measure_probabilities(0);
    CHECK(r0 == doctest::Approx(4.0 / 5.0).epsilon(1e-14));
    CHECK(r1 == doctest::Approx(1.0 / 5.0).epsilon(1e-14));

    CHECK_THROWS(s3.measure_probabilities(2));
}

TEST_CASE("collapse") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    ScaledState s(1, {cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0}});
    s.collapse(0, 0);
    auto [p0, p1] = s.measure_probabilities(0);
    CHECK(p0 == 1.0);
    CHECK(p1 == 0.0);

    ScaledState s2(2, {cplx{2, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}});
    s2.collapse(0, 1);
    auto [q0, q1] = s2.measure_probabilities(1);
    CHECK(q1 == 1.0); // |11> survives
    CHECK(q0 == 0.0);

    ScaledState s3(1, {cplx{1, 0}, cplx{0, 0}});
    CHECK_THROWS(s3.collapse(0, 1));
}

TEST_CASE("rescale") {
    ScaledState s(1, {cplx{8, 0}, cplx{0.125, 0}});
    s.rescale();
    CHECK(s.amps()[0] == cplx{1, 0});
    CHECK(s.amps()[1].real() == doctest::Approx(1.0 / 64.0).epsilon(1e-15));
    CHECK(s.log_scale() == doctest::Approx(std::log(8.0)).epsilon(1e-15));

    ScaledState s2(1, {cplx{1, 0}, cplx{0, 0}});
    s2.rescale();
    CHECK(s2.amps()[0] == cplx{1, 0});
    CHECK(s2.log_scale() == 0.0);

    const double tiny = std::ldexp(1.0, -70);
    ScaledState s3(1, {cplx{0, 0}, cplx{tiny, 0}});
    s3.rescale();
    CHECK(s3.amps()[1] == cplx{1, 0});
    CHECK(s3.log_scale() == doctest::Approx(-70.0 * std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("scale invariance of probability queries") {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 50; ++trial) {
        auto s = random_state(4, rng);
        auto shifted = s;
        shifted.add_log_scale(123.456);
        for (int q = 0; q < 4; ++q) {
            auto [a0, a1] = s.measure_probabilities(q);
            auto [b0, b1] = shifted.measure_probabilities(q);
            CHECK(a0 == b0); // exact: ledger cancels in the ratio
            CHECK(a1 == b1);
        }
    }
}

TEST_CASE("probability normalization on random states") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 100; ++trial) {
        auto s = random_state(5, rng);
        for (int q = 0; q < 5; ++q) {
            auto [p0, p1] = s.measure_probabilities(q);
            CHECK(std::abs(p0 + p1 - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("collapse then measure is deterministic") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        auto s = random_state(3, rng);
        const int q = trial % 3;
        auto [p0, p1] = s.measure_probabilities(q);
        const int outcome = p0 >= p1 ? 0 : 1;
        s.collapse(q, outcome);
        auto [c0, c1] = s.measure_probabilities(q);
        if (outcome == 0) {
            CHECK(c0 == 1.0);
            CHECK(c1 == 0.0);
        } else {
            CHECK(c1 == 1.0);
            CHECK(c0 == 0.0);
        }
    }
}

TEST_CASE("rescale is idempotent up to rounding") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 30; ++trial) {
        auto s = random_state(3, rng);
        s.rescale();
        const auto amps = s.amps();
        const double ls = s.log_scale();
        s.rescale(); // max is already ~1, so this is a near-no-op
        CHECK(std::abs(s.log_scale() - ls) <= 1e-15 * std::max(1.0, std::abs(ls)));
        for (std::size_t i = 0; i < amps.size(); ++i) {
            CHECK(std::abs(s.amps()[i] - amps[i]) <= 1e-15);
        }
        CHECK(s.max_abs_amp() == doctest::Approx(1.0).epsilon(1e-15));
    }
}
