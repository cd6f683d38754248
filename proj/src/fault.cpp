#include "rbb/fault.hpp"

#include <algorithm>
#include <numeric>

namespace rbb {

namespace {

// Deal balls 0..m-1 into bins in ascending bin order to match `loads`.
std::vector<int> dealt_assignment(const Configuration& q) {
    std::vector<int> ball_to_bin(static_cast<std::size_t>(q.m));
    int ball = 0;
    for (int u = 0; u < q.n; ++u)
        for (std::int64_t j = 0; j < q.loads[static_cast<std::size_t>(u)]; ++j)
            ball_to_bin[static_cast<std::size_t>(ball++)] = u;
    return ball_to_bin;
}

} // namespace

Configuration apply_fault(const Configuration& q, const FaultSchedule& f,
                          std::int64_t round, CounterRng& rng, BallLedger* ledger) {
    Configuration out = q;
    switch (f.kind) {
    case FaultSchedule::Kind::AllInOne: {
        std::fill(out.loads.begin(), out.loads.end(), 0);
        out.loads.at(static_cast<std::size_t>(f.target_bin)) = q.m;
        if (ledger)
            ledger->reassign(std::vector<int>(static_cast<std::size_t>(q.m), f.target_bin),
                             out, round);
        break;
    }
    case FaultSchedule::Kind::Permute: {
        // Uniform permutation of the bins; queues move with their bin.
        std::vector<int> perm(static_cast<std::size_t>(q.n));
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = perm.size(); i > 1; --i)
            std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
        for (int u = 0; u < q.n; ++u)
            out.loads[static_cast<std::size_t>(perm[static_cast<std::size_t>(u)])] =
                q.loads[static_cast<std::size_t>(u)];
        if (ledger) {
            std::vector<int> ball_to_bin(static_cast<std::size_t>(q.m));
            for (int ball = 0; ball < q.m; ++ball)
                ball_to_bin[static_cast<std::size_t>(ball)] =
                    perm[static_cast<std::size_t>(ledger->ball_bin(ball))];
            ledger->reassign(ball_to_bin, out, round);
        }
        break;
    }
    case FaultSchedule::Kind::Custom: {
        if (!f.custom) throw std::invalid_argument("custom fault without generator");
        out = f.custom(q, round);
        if (out.n != q.n || out.m != q.m)
            throw std::invalid_argument("custom fault changed n or m");
        if (ledger) ledger->reassign(dealt_assignment(out), out, round);
        break;
    }
    }
    return out;
}

} // namespace rbb
