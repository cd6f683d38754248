#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "rbb/config.hpp"
#include "rbb/ledger.hpp"
#include "rbb/run.hpp"

using namespace rbb;

namespace {
// First generator key whose next draws below `bound` equal `wanted`; lets a
// test force a specific destination pattern through the real stream type.
std::uint64_t key_forcing(const std::vector<std::uint64_t>& wanted, std::uint64_t bound) {
    for (std::uint64_t key = 0;; ++key) {
        CounterRng probe(key);
        bool ok = true;
        for (auto w : wanted)
            if (uniform_below(probe, bound) != w) {
                ok = false;
                break;
            }
        if (ok) return key;
    }
}
} // namespace

TEST_CASE("configuration construction") {
    auto q = make_configuration({1, 1, 1, 1});
    CHECK(q.n == 4);
    CHECK(q.m == 4);

    auto w = make_configuration({4, 0, 0, 0});
    CHECK(w.n == 4);
    CHECK(w.m == 4);

    CHECK_THROWS_AS(make_configuration({0, -1}), std::invalid_argument);
    CHECK_THROWS_AS(make_configuration({3}), std::invalid_argument);
}

TEST_CASE("configuration counts") {
    auto a = make_configuration({0, 2, 1, 1});
    CHECK(count_empty(a) == 1);
    CHECK(count_singleton(a) == 2);
    CHECK(count_overloaded(a) == 1);
    CHECK(max_load(a) == 2);

    auto b = make_configuration({4, 0, 0, 0});
    CHECK(count_empty(b) == 3);
    CHECK(count_singleton(b) == 0);
    CHECK(count_overloaded(b) == 1);
    CHECK(max_load(b) == 4);

    auto c = make_configuration({1, 1});
    CHECK(count_empty(c) == 0);
    CHECK(count_singleton(c) == 2);
    CHECK(count_overloaded(c) == 0);
    CHECK(max_load(c) == 1);
}

TEST_CASE("forced destination draws") {
    auto q = make_configuration({1, 1});
    auto topo = Topology::complete(2);
    CounterRng rng(key_forcing({1, 1}, 2));
    auto d = draw_destinations(q, topo, rng);
    REQUIRE(d.draws.size() == 2);
    CHECK(d.draws[0] == std::pair<int, int>{0, 1});
    CHECK(d.draws[1] == std::pair<int, int>{1, 1});
}

TEST_CASE("draw domain is the non-empty set") {
    auto q = make_configuration({0, 3});
    auto topo = Topology::complete(2);
    CounterRng rng(42);
    auto d = draw_destinations(q, topo, rng);
    REQUIRE(d.draws.size() == 1);
    CHECK(d.draws[0].first == 1);
}

TEST_CASE("uniform destination frequencies") {
    const int n = 16;
    const std::int64_t draws = 1000000;
    auto topo = Topology::complete(n);
    CounterRng rng = make_stream({7, 0}, StreamPurpose::Destinations);
    std::vector<std::int64_t> hits(n, 0);
    for (std::int64_t i = 0; i < draws; ++i) ++hits[static_cast<std::size_t>(topo.draw_neighbor(0, rng))];

    const double p = 1.0 / n;
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(draws));
    for (int u = 0; u < n; ++u) {
        double freq = static_cast<double>(hits[static_cast<std::size_t>(u)]) /
                      static_cast<double>(draws);
        CHECK(std::abs(freq - p) <= 5.0 * se);
    }
}

TEST_CASE("step examples") {
    {
        auto q = make_configuration({1, 1});
        DestinationDraws d{{{0, 1}, {1, 1}}};
        auto next = step(q, d);
        CHECK(next.loads == std::vector<std::int64_t>{0, 2});
    }
    {
        auto q = make_configuration({2, 0});
        DestinationDraws d{{{0, 0}}};
        auto next = step(q, d);
        CHECK(next.loads == std::vector<std::int64_t>{2, 0});
    }
    {
        auto q = make_configuration({1, 1, 1, 0});
        DestinationDraws d{{{0, 3}, {1, 3}, {2, 3}}};
        auto next = step(q, d);
        CHECK(next.loads == std::vector<std::int64_t>{0, 0, 0, 3});
    }
}

TEST_CASE("step validates the draw domain") {
    auto q = make_configuration({0, 2});
    DestinationDraws d{{{0, 1}}}; // bin 0 is empty, must be rejected
    CHECK_THROWS_AS(step(q, d), std::invalid_argument);
}

TEST_CASE("queue selection strategies") {
    CounterRng rng(1);
    std::deque<int> q{7, 3, 9};
    CHECK(select_ball(q, Strategy::Fifo, rng) == 7);
    q = {7, 3, 9};
    CHECK(select_ball(q, Strategy::Lifo, rng) == 9);
    q = {7};
    CHECK(select_ball(q, Strategy::Random, rng) == 7);
}

TEST_CASE("run with zero rounds records the initial state") {
    auto q0 = flat_configuration(4);
    auto result = run(q0, Topology::complete(4), 0, {1, 0});
    REQUIRE(result.trajectory.rows.size() == 1);
    CHECK(result.trajectory.rows[0].round == 0);
    CHECK(result.final_config.loads == q0.loads);
}

TEST_CASE("ball conservation at every recorded round") {
    auto q0 = make_configuration({5, 0, 1, 1, 0, 1});
    auto result = run(q0, Topology::complete(6), 200, {3, 0});
    CHECK(result.rounds_executed == 200);
    std::int64_t m =
        std::accumulate(result.final_config.loads.begin(), result.final_config.loads.end(),
                        std::int64_t{0});
    CHECK(m == q0.m);
    CHECK(result.ledger.consistent_with(result.final_config));
}

TEST_CASE("load trajectory does not depend on the strategy") {
    auto q0 = make_configuration({3, 0, 2, 1, 0, 0, 1, 1});
    auto topo = Topology::complete(8);
    RunOptions fifo, random_s;
    fifo.strategy = Strategy::Fifo;
    random_s.strategy = Strategy::Random;
    auto a = run(q0, topo, 300, {9, 4}, fifo);
    auto b = run(q0, topo, 300, {9, 4}, random_s);
    REQUIRE(a.trajectory.rows.size() == b.trajectory.rows.size());
    for (std::size_t i = 0; i < a.trajectory.rows.size(); ++i) {
        CHECK(a.trajectory.rows[i].max_load == b.trajectory.rows[i].max_load);
        CHECK(a.trajectory.rows[i].empty_bins == b.trajectory.rows[i].empty_bins);
    }
    CHECK(a.final_config.loads == b.final_config.loads);
}

TEST_CASE("identical seeds give identical runs") {
    auto q0 = flat_configuration(32);
    auto topo = Topology::complete(32);
    auto a = run(q0, topo, 500, {11, 2});
    auto b = run(q0, topo, 500, {11, 2});
    CHECK(a.final_config.loads == b.final_config.loads);
    CHECK(a.running_max_load == b.running_max_load);

    auto c = run(q0, topo, 500, {11, 3});
    CHECK(a.final_config.loads != c.final_config.loads);
}

TEST_CASE("ring topology") {
    CHECK_THROWS_AS(Topology::ring(2), std::invalid_argument);
    auto ring = Topology::ring(5);
    auto nb = ring.neighbors(0);
    REQUIRE(nb.size() == 2);
    CHECK(nb[0] == 4);
    CHECK(nb[1] == 1);
}

TEST_CASE("random regular topology is simple and has full degree") {
    auto topo = Topology::d_regular_random(32, 4, 99);
    for (int u = 0; u < 32; ++u) {
        auto nb = topo.neighbors(u);
        REQUIRE(nb.size() == 4);
        for (std::size_t i = 0; i < nb.size(); ++i) {
            CHECK(nb[i] != u);
            for (std::size_t j = i + 1; j < nb.size(); ++j) CHECK(nb[i] != nb[j]);
        }
    }
}

TEST_CASE("ledger tracks ball positions through a run") {
    auto q0 = make_configuration({2, 2, 0, 0});
    RunOptions opts;
    opts.track_visits = true;
    auto result = run(q0, Topology::complete(4), 50, {5, 0}, opts);
    CHECK(result.ledger.consistent_with(result.final_config));
    for (int ball = 0; ball < 4; ++ball)
        CHECK(result.ledger.visited(ball, result.ledger.ball_bin(ball)));
}
