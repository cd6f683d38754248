#include "rbb/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace rbb {

namespace {

// n^m states and n^k transitions per state stay trivially enumerable only
// for desk-scale instances.
void check_size_guard(int n, std::int64_t m) {
    if (n > 4 || m > 4)
        throw std::invalid_argument("exact enumeration is limited to n <= 4, m <= 4");
}

std::vector<int> non_empty_bins(const std::vector<std::int64_t>& loads) {
    std::vector<int> w;
    for (int u = 0; u < static_cast<int>(loads.size()); ++u)
        if (loads[static_cast<std::size_t>(u)] > 0) w.push_back(u);
    return w;
}

std::vector<std::int64_t> apply_assignment(const std::vector<std::int64_t>& loads,
                                           const std::vector<int>& sources,
                                           const std::vector<int>& dests) {
    auto next = loads;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        --next[static_cast<std::size_t>(sources[i])];
        ++next[static_cast<std::size_t>(dests[i])];
    }
    return next;
}

// Invokes fn(dests) for every destination assignment in odometer order.
template <class Fn>
void for_each_assignment(int n, std::size_t k, Fn&& fn) {
    std::vector<int> dests(k, 0);
    while (true) {
        fn(dests);
        std::size_t i = 0;
        for (; i < k; ++i) {
            if (++dests[i] < n) break;
            dests[i] = 0;
        }
        if (i == k) break;
    }
}

} // namespace

std::string to_string(const Rational& r) {
    return r.numerator().str() + "/" + r.denominator().str();
}

Rational ExactDistribution::total_mass() const {
    Rational total(0);
    for (const auto& [_, p] : probabilities) total += p;
    return total;
}

ExactDistribution point_mass(const Configuration& q0) {
    check_size_guard(q0.n, q0.m);
    ExactDistribution d;
    d.n = q0.n;
    d.m = q0.m;
    d.probabilities.emplace(q0.loads, Rational(1));
    return d;
}

ExactDistribution evolve_exact(const ExactDistribution& d) {
    check_size_guard(d.n, d.m);
    ExactDistribution next;
    next.n = d.n;
    next.m = d.m;
    next.round = d.round + 1;

    for (const auto& [loads, p] : d.probabilities) {
        const auto sources = non_empty_bins(loads);
        if (sources.empty()) {
            next.probabilities[loads] += p;
            continue;
        }
        Rational branch = p / Rational(BigInt(boost::multiprecision::pow(
                                  BigInt(d.n), static_cast<unsigned>(sources.size()))));
        for_each_assignment(d.n, sources.size(), [&](const std::vector<int>& dests) {
            next.probabilities[apply_assignment(loads, sources, dests)] += branch;
        });
    }
    return next;
}

Rational joint_event_probability(const Configuration& q0,
                                 const std::vector<ArrivalEvent>& events) {
    check_size_guard(q0.n, q0.m);
    std::int64_t horizon = 0;
    for (const auto& e : events) {
        if (e.round < 1) throw std::invalid_argument("event rounds are 1-based");
        if (e.bin < 0 || e.bin >= q0.n) throw std::invalid_argument("event bin out of range");
        if (!e.predicate) throw std::invalid_argument("event without predicate");
        horizon = std::max(horizon, e.round);
    }

    // Depth-first enumeration of destination sequences, pruning as soon as a
    // round's events fail.
    std::function<Rational(const std::vector<std::int64_t>&, std::int64_t, const Rational&)>
        explore = [&](const std::vector<std::int64_t>& loads, std::int64_t round,
                      const Rational& weight) -> Rational {
        if (round > horizon) return weight;
        const auto sources = non_empty_bins(loads);
        Rational acc(0);

        auto arrivals_ok = [&](const std::vector<int>& dests) {
            for (const auto& e : events) {
                if (e.round != round) continue;
                std::int64_t count = std::count(dests.begin(), dests.end(), e.bin);
                if (!e.predicate(count)) return false;
            }
            return true;
        };

        if (sources.empty()) {
            if (!arrivals_ok({})) return Rational(0);
            return explore(loads, round + 1, weight);
        }

        Rational branch = weight / Rational(BigInt(boost::multiprecision::pow(
                                       BigInt(q0.n), static_cast<unsigned>(sources.size()))));
        for_each_assignment(q0.n, sources.size(), [&](const std::vector<int>& dests) {
            if (!arrivals_ok(dests)) return;
            acc += explore(apply_assignment(loads, sources, dests), round + 1, branch);
        });
        return acc;
    };

    return explore(q0.loads, 1, Rational(1));
}

} // namespace rbb
