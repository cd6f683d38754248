#include "rbb/run.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rbb {

namespace {

TrajectoryRow summarize(const Configuration& q, std::int64_t round) {
    TrajectoryRow row;
    row.round = round;
    for (auto v : q.loads) {
        if (v == 0)
            ++row.empty_bins;
        else if (v >= 2)
            ++row.overloaded_bins;
        if (v > row.max_load) row.max_load = v;
    }
    return row;
}

} // namespace

RunResult run(const Configuration& q0, const Topology& topology, std::int64_t rounds,
              SeedCtx seed, const RunOptions& options) {
    if (rounds < 0) throw std::invalid_argument("negative round count");
    if (topology.n() != q0.n) throw std::invalid_argument("topology size mismatch");
    if (options.stop_when_covered && !(options.with_ledger && options.track_visits))
        throw std::invalid_argument("cover stop requires a visit-tracking ledger");

    CounterRng dest_rng = make_stream(seed, StreamPurpose::Destinations);
    CounterRng sel_rng = make_stream(seed, StreamPurpose::Selection);
    CounterRng fault_rng = make_stream(seed, StreamPurpose::Fault);

    RunResult result;
    result.final_config = q0;
    if (options.with_ledger)
        result.ledger = BallLedger(q0, options.track_visits, options.track_waiting);

    Configuration& q = result.final_config;
    BallLedger& ledger = result.ledger;

    TrajectoryRow row = summarize(q, 0);
    result.trajectory.rows.push_back(row);
    result.running_max_load = row.max_load;
    result.min_empty_bins = q.n;
    if (options.legitimacy_threshold && row.max_load <= *options.legitimacy_threshold)
        result.first_legitimate_round = 0;

    std::vector<std::pair<int, int>> moves; // (ball or source bin, destination)
    moves.reserve(static_cast<std::size_t>(q.n));
    std::vector<int> moved_balls;
    if (options.with_ledger) moved_balls.reserve(static_cast<std::size_t>(q.n));

    for (std::int64_t t = 1; t <= rounds; ++t) {
        if (options.faults && options.faults->due(t))
            q = apply_fault(q, *options.faults, t, fault_rng,
                            options.with_ledger ? &ledger : nullptr);

        // Simultaneous departures: destinations and selections are taken
        // against the round-start snapshot, arrivals land afterwards.
        moves.clear();
        moved_balls.clear();
        for (int u = 0; u < q.n; ++u) {
            if (q.loads[static_cast<std::size_t>(u)] == 0) continue;
            int dest = topology.draw_neighbor(u, dest_rng);
            if (options.with_ledger) {
                int ball = ledger.pop_from(u, options.strategy, sel_rng, t);
                moves.emplace_back(ball, dest);
                moved_balls.push_back(ball);
            } else {
                moves.emplace_back(u, dest);
            }
        }
        for (int u = 0; u < q.n; ++u)
            if (q.loads[static_cast<std::size_t>(u)] > 0)
                --q.loads[static_cast<std::size_t>(u)];
        for (const auto& [ball_or_src, dest] : moves) {
            ++q.loads[static_cast<std::size_t>(dest)];
            if (options.with_ledger) ledger.push_to(ball_or_src, dest, t);
        }
        if (options.with_ledger) ledger.finish_round(q, moved_balls);

        row = summarize(q, t);
        result.running_max_load = std::max(result.running_max_load, row.max_load);
        if (t >= options.empty_floor_from_round) {
            result.min_empty_bins = std::min(result.min_empty_bins, row.empty_bins);
            ++result.empty_observed_rounds;
            if (row.empty_bins < q.n / 4) ++result.empty_below_quarter_rounds;
        }
        if (options.check_overloaded_invariant && q.m == q.n &&
            row.overloaded_bins > row.empty_bins)
            ++result.overloaded_invariant_violations;

        bool last = (t == rounds);
        if (options.record_every <= 1 || t % options.record_every == 0 || last)
            result.trajectory.rows.push_back(row);

        result.rounds_executed = t;
        if (!result.first_legitimate_round && options.legitimacy_threshold &&
            row.max_load <= *options.legitimacy_threshold) {
            result.first_legitimate_round = t;
            if (options.stop_when_legitimate) break;
        }
        if (options.stop_when_covered && ledger.all_covered()) break;
    }

    return result;
}

} // namespace rbb
