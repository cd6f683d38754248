#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rbb/bounds.hpp"

using namespace rbb;

TEST_CASE("chernoff closed forms") {
    CHECK(chernoff_upper(100.0, 0.25) == doctest::Approx(std::exp(-25.0 / 12.0)).epsilon(1e-12));
    CHECK(chernoff_upper(100.0, 0.25) == doctest::Approx(0.12452).epsilon(1e-4));
    CHECK(chernoff_lower(100.0, 0.25) == doctest::Approx(std::exp(-25.0 / 8.0)).epsilon(1e-12));

    // delta -> 0+ drives the bound to 1
    CHECK(chernoff_lower(50.0, 1e-9) == doctest::Approx(1.0));
    CHECK(chernoff_upper(50.0, 1e-9) == doctest::Approx(1.0));

    // monotone decreasing in both mu and delta
    CHECK(chernoff_upper(200.0, 0.25) < chernoff_upper(100.0, 0.25));
    CHECK(chernoff_upper(100.0, 0.5) < chernoff_upper(100.0, 0.25));
}

TEST_CASE("chernoff domain errors") {
    CHECK_THROWS_AS(chernoff_upper(100.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(chernoff_upper(100.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(chernoff_upper(100.0, -0.5), std::domain_error);
    CHECK_THROWS_AS(chernoff_upper(0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(chernoff_lower(-1.0, 0.5), std::domain_error);
}

TEST_CASE("chernoff bound dominates an empirical binomial tail") {
    // Sum of 10^4 fair coin flips; P[X >= 1.25 * 5000] over 10^6 trials must
    // stay below exp(-delta^2 mu / 3).
    const int flips = 10000;
    const double mu = 5000.0;
    const double delta = 0.25;
    const std::int64_t trials = 1000000;
    std::mt19937_64 gen(12345);
    std::binomial_distribution<int> coin(flips, 0.5);
    std::int64_t exceed = 0;
    for (std::int64_t i = 0; i < trials; ++i)
        if (static_cast<double>(coin(gen)) >= (1.0 + delta) * mu) ++exceed;
    const double phat = static_cast<double>(exceed) / static_cast<double>(trials);
    CHECK(phat <= chernoff_upper(mu, delta));
}

TEST_CASE("between-empty formulas") {
    CHECK(between_empty_bound(2.0, 10, 100.0) == doctest::Approx(0.01));
    CHECK(between_empty_threshold(1.0, std::exp(1.0)) == doctest::Approx(38.4));
    CHECK(between_empty_threshold(2.0, 1024.0) ==
          doctest::Approx(192.0 / 5.0 * 2.0 * std::log(1024.0)));

    CHECK_THROWS_AS(between_empty_bound(0.0, 10, 100.0), std::domain_error);
    CHECK_THROWS_AS(between_empty_bound(2.0, 0, 100.0), std::domain_error);
    CHECK_THROWS_AS(between_empty_threshold(2.0, 1.0), std::domain_error);
}

TEST_CASE("tetris window mean formula") {
    CHECK(tetris_window_mean(0) == doctest::Approx(0.75));
    CHECK(tetris_window_mean(3) == doctest::Approx(3.0));
    CHECK(tetris_window_mean(15) == doctest::Approx(12.0));
    CHECK_THROWS_AS(tetris_window_mean(-1), std::domain_error);
}
