#pragma once
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rbb/rng.hpp"

namespace rbb {

// Load vector of n bins holding m balls; one state of the chain.
struct Configuration {
    std::vector<std::int64_t> loads;
    int n = 0;
    std::int64_t m = 0;
};

Configuration make_configuration(std::vector<std::int64_t> loads);

Configuration flat_configuration(int n);                 // (1,...,1)
Configuration all_in_one_configuration(int n, int target = 0);
// n balls thrown u.a.r. into n bins (the standard one-shot allocation).
Configuration random_configuration(int n, std::int64_t m, CounterRng& rng);

int count_empty(const Configuration& q);
int count_singleton(const Configuration& q);
int count_overloaded(const Configuration& q);
std::int64_t max_load(const Configuration& q);

// Neighbor structure the per-round destination draws are uniform over.
// COMPLETE includes the bin itself (a ball may stay put); RING and
// D_REGULAR_RANDOM are simple graphs, so self is excluded there.
class Topology {
public:
    enum class Kind { Complete, Ring, DRegularRandom };

    static Topology complete(int n);
    static Topology ring(int n);
    // Pairing-model sample, rejected until simple and connected.
    static Topology d_regular_random(int n, int d, std::uint64_t seed);

    Kind kind() const { return kind_; }
    int n() const { return n_; }
    int degree() const;
    std::vector<int> neighbors(int u) const;

    template <class Rng>
    int draw_neighbor(int u, Rng& rng) const {
        switch (kind_) {
        case Kind::Complete:
            return static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n_)));
        case Kind::Ring:
            return uniform_below(rng, 2) == 0 ? (u + n_ - 1) % n_ : (u + 1) % n_;
        case Kind::DRegularRandom:
            return adjacency_[static_cast<std::size_t>(u) * d_ +
                              uniform_below(rng, static_cast<std::uint64_t>(d_))];
        }
        throw std::logic_error("unreachable");
    }

private:
    Topology(Kind kind, int n, int d) : kind_(kind), n_(n), d_(d) {}

    Kind kind_;
    int n_;
    int d_ = 0;
    std::vector<int> adjacency_; // flattened n x d, DRegularRandom only
};

// One uniform destination per non-empty bin, keyed by source bin,
// kept in ascending source order.
struct DestinationDraws {
    std::vector<std::pair<int, int>> draws; // (source bin, destination bin)
};

// Draws in ascending bin-index order so the random stream (and hence the
// load process) does not depend on the queue strategy.
DestinationDraws draw_destinations(const Configuration& q, const Topology& topo,
                                   CounterRng& rng);

// One synchronous round: every non-empty bin loses one ball, then each
// drawn destination gains one.  Pure in (q, d).
Configuration step(const Configuration& q, const DestinationDraws& d);

} // namespace rbb
