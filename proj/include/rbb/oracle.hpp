#pragma once
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "rbb/config.hpp"

namespace rbb {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<BigInt>;

std::string to_string(const Rational& r);

// Exact distribution over ordered load vectors (bins are distinguishable),
// computed with rational arithmetic.  Intended for tiny instances; a size
// guard rejects anything beyond roughly n <= 4, m <= 4.
struct ExactDistribution {
    int n = 0;
    std::int64_t m = 0;
    std::int64_t round = 0;
    std::map<std::vector<std::int64_t>, Rational> probabilities;

    Rational total_mass() const;
};

ExactDistribution point_mass(const Configuration& q0);

// One exact round: a configuration with k non-empty bins pushes its mass
// onto the n^k equally likely destination assignments.
ExactDistribution evolve_exact(const ExactDistribution& d);

// Predicate on the number of arrivals into `bin` during `round` (1-based).
struct ArrivalEvent {
    std::int64_t round = 1;
    int bin = 0;
    std::function<bool(std::int64_t)> predicate;
};

// Exact probability of the conjunction of the events, by enumerating every
// destination sequence up to the latest event round.
Rational joint_event_probability(const Configuration& q0,
                                 const std::vector<ArrivalEvent>& events);

} // namespace rbb
