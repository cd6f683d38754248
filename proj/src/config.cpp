#include "rbb/config.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace rbb {

Configuration make_configuration(std::vector<std::int64_t> loads) {
    if (loads.size() < 2)
        throw std::invalid_argument("configuration needs at least 2 bins");
    for (auto v : loads)
        if (v < 0)
            throw std::invalid_argument("negative bin load");
    Configuration q;
    q.n = static_cast<int>(loads.size());
    q.m = std::accumulate(loads.begin(), loads.end(), std::int64_t{0});
    q.loads = std::move(loads);
    return q;
}

Configuration flat_configuration(int n) {
    return make_configuration(std::vector<std::int64_t>(static_cast<std::size_t>(n), 1));
}

Configuration all_in_one_configuration(int n, int target) {
    std::vector<std::int64_t> loads(static_cast<std::size_t>(n), 0);
    loads.at(static_cast<std::size_t>(target)) = n;
    return make_configuration(std::move(loads));
}

Configuration random_configuration(int n, std::int64_t m, CounterRng& rng) {
    std::vector<std::int64_t> loads(static_cast<std::size_t>(n), 0);
    for (std::int64_t i = 0; i < m; ++i)
        ++loads[uniform_below(rng, static_cast<std::uint64_t>(n))];
    return make_configuration(std::move(loads));
}

int count_empty(const Configuration& q) {
    return static_cast<int>(std::count(q.loads.begin(), q.loads.end(), 0));
}

int count_singleton(const Configuration& q) {
    return static_cast<int>(std::count(q.loads.begin(), q.loads.end(), 1));
}

int count_overloaded(const Configuration& q) {
    return static_cast<int>(
        std::count_if(q.loads.begin(), q.loads.end(), [](std::int64_t v) { return v >= 2; }));
}

std::int64_t max_load(const Configuration& q) {
    return *std::max_element(q.loads.begin(), q.loads.end());
}

Topology Topology::complete(int n) {
    if (n < 2) throw std::invalid_argument("complete topology needs n >= 2");
    return Topology(Kind::Complete, n, n);
}

Topology Topology::ring(int n) {
    if (n < 3) throw std::invalid_argument("ring topology needs n >= 3");
    return Topology(Kind::Ring, n, 2);
}

Topology Topology::d_regular_random(int n, int d, std::uint64_t seed) {
    if (n < 2 || d < 2 || d >= n || (static_cast<std::int64_t>(n) * d) % 2 != 0)
        throw std::invalid_argument("d-regular topology needs 2 <= d < n and n*d even");

    CounterRng rng(CounterRng::mix(seed ^ 0x5851f42d4c957f2dULL));
    for (int attempt = 0; attempt < 1000; ++attempt) {
        // Pairing model: d stubs per vertex, shuffled and paired.
        std::vector<int> stubs;
        stubs.reserve(static_cast<std::size_t>(n) * d);
        for (int u = 0; u < n; ++u)
            for (int j = 0; j < d; ++j) stubs.push_back(u);
        for (std::size_t i = stubs.size(); i > 1; --i)
            std::swap(stubs[i - 1], stubs[uniform_below(rng, i)]);

        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
        bool simple = true;
        for (std::size_t i = 0; i + 1 < stubs.size() && simple; i += 2) {
            int a = stubs[i], b = stubs[i + 1];
            if (a == b) { simple = false; break; }
            auto& na = adj[static_cast<std::size_t>(a)];
            if (std::find(na.begin(), na.end(), b) != na.end()) { simple = false; break; }
            na.push_back(b);
            adj[static_cast<std::size_t>(b)].push_back(a);
        }
        if (!simple) continue;

        // Connectivity check (BFS).
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<int> queue{0};
        seen[0] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (int v : adj[static_cast<std::size_t>(queue[head])])
                if (!seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    queue.push_back(v);
                }
        if (queue.size() != static_cast<std::size_t>(n)) continue;

        Topology topo(Kind::DRegularRandom, n, d);
        topo.adjacency_.resize(static_cast<std::size_t>(n) * d);
        for (int u = 0; u < n; ++u) {
            std::sort(adj[static_cast<std::size_t>(u)].begin(), adj[static_cast<std::size_t>(u)].end());
            for (int j = 0; j < d; ++j)
                topo.adjacency_[static_cast<std::size_t>(u) * d + j] = adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(j)];
        }
        return topo;
    }
    throw std::runtime_error("failed to sample a simple connected d-regular graph");
}

int Topology::degree() const { return kind_ == Kind::Complete ? n_ : d_; }

std::vector<int> Topology::neighbors(int u) const {
    if (u < 0 || u >= n_) throw std::out_of_range("bin index");
    switch (kind_) {
    case Kind::Complete: {
        std::vector<int> all(static_cast<std::size_t>(n_));
        std::iota(all.begin(), all.end(), 0);
        return all;
    }
    case Kind::Ring:
        return {(u + n_ - 1) % n_, (u + 1) % n_};
    case Kind::DRegularRandom:
        return std::vector<int>(adjacency_.begin() + static_cast<std::ptrdiff_t>(u) * d_,
                                adjacency_.begin() + static_cast<std::ptrdiff_t>(u + 1) * d_);
    }
    throw std::logic_error("unreachable");
}

DestinationDraws draw_destinations(const Configuration& q, const Topology& topo,
                                   CounterRng& rng) {
    if (topo.n() != q.n) throw std::invalid_argument("topology size mismatch");
    DestinationDraws d;
    d.draws.reserve(static_cast<std::size_t>(q.n) - static_cast<std::size_t>(count_empty(q)));
    for (int u = 0; u < q.n; ++u)
        if (q.loads[static_cast<std::size_t>(u)] > 0)
            d.draws.emplace_back(u, topo.draw_neighbor(u, rng));
    return d;
}

Configuration step(const Configuration& q, const DestinationDraws& d) {
    // d must contain exactly the non-empty bins of q, in ascending order.
    std::size_t k = 0;
    for (int u = 0; u < q.n; ++u) {
        if (q.loads[static_cast<std::size_t>(u)] > 0) {
            if (k >= d.draws.size() || d.draws[k].first != u)
                throw std::invalid_argument("draws do not match non-empty bins");
            int v = d.draws[k].second;
            if (v < 0 || v >= q.n) throw std::invalid_argument("destination out of range");
            ++k;
        }
    }
    if (k != d.draws.size())
        throw std::invalid_argument("draws do not match non-empty bins");

    Configuration out = q;
    for (const auto& [u, v] : d.draws) {
        --out.loads[static_cast<std::size_t>(u)];
        ++out.loads[static_cast<std::size_t>(v)];
    }
    return out;
}

} // namespace rbb
