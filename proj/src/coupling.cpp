#include "rbb/coupling.hpp"

#include <algorithm>
#include <stdexcept>

namespace rbb {

CoupledFlags coupled_step(Configuration& q, TetrisState& s, CounterRng& dest_rng,
                          CounterRng& free_rng, ArrivalCounter* counter) {
    const int n = q.n;
    if (n % 4 != 0) throw std::invalid_argument("coupling needs 4 | n");
    if (static_cast<int>(s.loads.size()) != n)
        throw std::invalid_argument("coupled states must share n");

    const auto topo = Topology::complete(n);
    const auto draws = draw_destinations(q, topo, dest_rng);
    const auto non_empty = static_cast<std::int64_t>(draws.draws.size());
    const auto total_arrivals = tetris_arrivals_per_round(n);

    CoupledFlags flags;
    flags.coupled = non_empty <= total_arrivals;

    std::vector<int> arrivals;
    arrivals.reserve(static_cast<std::size_t>(total_arrivals));
    if (flags.coupled)
        for (const auto& [src, dest] : draws.draws) arrivals.push_back(dest);
    while (static_cast<std::int64_t>(arrivals.size()) < total_arrivals)
        arrivals.push_back(static_cast<int>(uniform_below(free_rng, static_cast<std::uint64_t>(n))));

    q = step(q, draws);
    tetris_step_forced(s, arrivals, counter);

    flags.empty_event = count_empty(q) >= n / 4;
    flags.dominance = true;
    for (int u = 0; u < n; ++u)
        if (s.loads[static_cast<std::size_t>(u)] < q.loads[static_cast<std::size_t>(u)]) {
            flags.dominance = false;
            break;
        }
    return flags;
}

CoupledTrajectory coupled_run(const Configuration& q0, std::int64_t rounds, SeedCtx seed,
                              std::int64_t record_every) {
    if (rounds < 0) throw std::invalid_argument("negative round count");
    if (q0.n % 4 != 0) throw std::invalid_argument("coupling needs 4 | n");
    if (q0.m != q0.n) throw std::invalid_argument("coupled run needs sum(q0) = n");
    if (count_empty(q0) < q0.n / 4)
        throw std::invalid_argument("coupled run needs at least n/4 empty bins in q0");

    CounterRng dest_rng = make_stream(seed, StreamPurpose::Destinations);
    CounterRng free_rng = make_stream(seed, StreamPurpose::FreeArrivals);

    Configuration q = q0;
    TetrisState s = make_tetris(q0.loads);

    auto summarize = [](const std::vector<std::int64_t>& loads, std::int64_t round) {
        TrajectoryRow row;
        row.round = round;
        for (auto v : loads) {
            if (v == 0)
                ++row.empty_bins;
            else if (v >= 2)
                ++row.overloaded_bins;
            if (v > row.max_load) row.max_load = v;
        }
        return row;
    };

    CoupledTrajectory out;
    auto record = [&](std::int64_t t, const CoupledFlags& flags) {
        out.original.rows.push_back(summarize(q.loads, t));
        out.tetris.rows.push_back(summarize(s.loads, t));
        out.coupled.push_back(flags.coupled);
        out.empty_event.push_back(flags.empty_event);
        out.dominance.push_back(flags.dominance);
    };

    record(0, CoupledFlags{true, count_empty(q0) >= q0.n / 4, true});
    out.original_running_max = out.original.rows[0].max_load;
    out.tetris_running_max = out.tetris.rows[0].max_load;

    for (std::int64_t t = 1; t <= rounds; ++t) {
        CoupledFlags flags = coupled_step(q, s, dest_rng, free_rng);
        out.case_ii_occurred = out.case_ii_occurred || !flags.coupled;
        out.dominance_held = out.dominance_held && flags.dominance;
        if (!flags.coupled) ++out.case_ii_rounds;
        if (!flags.dominance) ++out.dominance_violation_rounds;
        out.original_running_max =
            std::max<std::int64_t>(out.original_running_max, max_load(q));
        out.tetris_running_max = std::max(
            out.tetris_running_max, *std::max_element(s.loads.begin(), s.loads.end()));
        if (record_every <= 1 || t % record_every == 0 || t == rounds) record(t, flags);
    }
    return out;
}

} // namespace rbb
