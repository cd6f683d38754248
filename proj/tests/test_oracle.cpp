#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rbb/config.hpp"
#include "rbb/oracle.hpp"

using namespace rbb;

TEST_CASE("point mass is an exact distribution") {
    auto q0 = make_configuration({4, 0, 0, 0});
    auto d = point_mass(q0);
    CHECK(d.round == 0);
    CHECK(d.total_mass() == Rational(1));
    REQUIRE(d.probabilities.size() == 1);
    CHECK(d.probabilities.begin()->first == q0.loads);
}

TEST_CASE("one exact round from (1,1)") {
    auto d = evolve_exact(point_mass(make_configuration({1, 1})));
    CHECK(d.round == 1);
    CHECK(d.total_mass() == Rational(1));
    REQUIRE(d.probabilities.size() == 3);
    CHECK(d.probabilities.at({2, 0}) == Rational(1, 4));
    CHECK(d.probabilities.at({0, 2}) == Rational(1, 4));
    CHECK(d.probabilities.at({1, 1}) == Rational(1, 2));
}

TEST_CASE("mass is conserved over several rounds") {
    auto d = point_mass(make_configuration({2, 1, 0}));
    for (int t = 0; t < 4; ++t) {
        d = evolve_exact(d);
        CHECK(d.total_mass() == Rational(1));
        for (const auto& [loads, p] : d.probabilities) {
            std::int64_t m = 0;
            for (auto v : loads) m += v;
            CHECK(m == 3);
            CHECK(p > Rational(0));
        }
    }
    CHECK(d.round == 4);
}

TEST_CASE("counterexample rationals") {
    auto q0 = make_configuration({1, 1});
    auto zero = [](std::int64_t k) { return k == 0; };

    auto p1 = joint_event_probability(q0, {{1, 0, zero}});
    auto p2 = joint_event_probability(q0, {{2, 0, zero}});
    auto p12 = joint_event_probability(q0, {{1, 0, zero}, {2, 0, zero}});

    CHECK(p1 == Rational(1, 4));
    CHECK(p2 == Rational(3, 8));
    CHECK(p12 == Rational(1, 8));
    CHECK(p12 > p1 * p2);
    CHECK(p1 * p2 == Rational(3, 32));
    CHECK(to_string(p12) == "1/8");
}

TEST_CASE("joint probability cross-check against evolved distribution") {
    // P[arrivals into bin 0 in round 1 == j] from (1,1,1) is Binomial(3, 1/3).
    auto q0 = make_configuration({1, 1, 1});
    for (std::int64_t j = 0; j <= 3; ++j) {
        auto p = joint_event_probability(q0, {{1, 0, [j](std::int64_t k) { return k == j; }}});
        // C(3,j) (1/3)^j (2/3)^(3-j)
        BigInt choose = (j == 0 || j == 3) ? 1 : 3;
        Rational third(1, 3), two_thirds(2, 3);
        Rational want(choose);
        for (int i = 0; i < j; ++i) want *= third;
        for (int i = 0; i < 3 - j; ++i) want *= two_thirds;
        CHECK(p == want);
    }
}

TEST_CASE("events over two rounds agree with step-by-step enumeration") {
    // P[no arrivals into bin 1 during rounds 1 and 2] from (2,0):
    // round 1 has one draw (from bin 0); round 2 has 1 or 2 non-empty bins.
    auto q0 = make_configuration({2, 0});
    auto zero = [](std::int64_t k) { return k == 0; };
    auto p = joint_event_probability(q0, {{1, 1, zero}, {2, 1, zero}});
    // round 1: draw 0 w.p. 1/2 -> state (2,0), round 2 single draw, 0 w.p. 1/2
    // round 1: draw 1 w.p. 1/2 -> event already failed
    CHECK(p == Rational(1, 4));
}

TEST_CASE("size guard") {
    CHECK_THROWS_AS(point_mass(flat_configuration(5)), std::invalid_argument);
    CHECK_THROWS_AS(point_mass(make_configuration({5, 0})), std::invalid_argument);
    CHECK_THROWS_AS(joint_event_probability(flat_configuration(5),
                                            {{1, 0, [](std::int64_t) { return true; }}}),
                    std::invalid_argument);
}

TEST_CASE("simulator agrees with the oracle on a three-bin event") {
    // P[exactly one arrival into bin 0 in round 1] from (1,0,2).
    auto q0 = make_configuration({1, 0, 2});
    auto one = [](std::int64_t k) { return k == 1; };
    auto exact = joint_event_probability(q0, {{1, 0, one}});

    const std::int64_t trials = 1000000;
    const auto topo = Topology::complete(3);
    std::int64_t hits = 0;
    for (std::int64_t i = 0; i < trials; ++i) {
        CounterRng rng = make_stream({123, static_cast<std::uint64_t>(i)},
                                     StreamPurpose::Destinations);
        auto draws = draw_destinations(q0, topo, rng);
        int arrivals = 0;
        for (const auto& [src, dest] : draws.draws)
            if (dest == 0) ++arrivals;
        if (arrivals == 1) ++hits;
    }
    const double p = boost::rational_cast<double>(exact);
    const double phat = static_cast<double>(hits) / static_cast<double>(trials);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    CHECK(std::abs(phat - p) <= 6.0 * se);
}
