#pragma once
#include <cstdint>
#include <optional>

#include "rbb/config.hpp"
#include "rbb/fault.hpp"
#include "rbb/ledger.hpp"
#include "rbb/rng.hpp"
#include "rbb/trajectory.hpp"

namespace rbb {

struct RunOptions {
    Strategy strategy = Strategy::Fifo;
    bool with_ledger = true;
    bool track_visits = false;
    bool track_waiting = false;
    bool stop_when_covered = false;             // needs track_visits
    std::optional<double> legitimacy_threshold; // probe first round with max load <= this
    bool stop_when_legitimate = false;
    std::optional<FaultSchedule> faults;
    // Debug assertion: overloaded <= empty after every round (m == n only).
    bool check_overloaded_invariant = false;
    // Record only every k-th row (row 0 and the final row always recorded).
    std::int64_t record_every = 1;
    // Running minimum of count_empty over rounds >= this one (default 1).
    std::int64_t empty_floor_from_round = 1;
};

struct RunResult {
    Trajectory trajectory;
    Configuration final_config;
    BallLedger ledger; // empty when !with_ledger
    std::int64_t rounds_executed = 0;
    std::int64_t running_max_load = 0;
    // min over observed rounds t >= empty_floor_from_round of count_empty
    int min_empty_bins = 0;
    // rounds t >= empty_floor_from_round with count_empty < n/4
    std::int64_t empty_below_quarter_rounds = 0;
    std::int64_t empty_observed_rounds = 0;
    std::optional<std::int64_t> first_legitimate_round;
    std::int64_t overloaded_invariant_violations = 0;
};

// Executes up to `rounds` synchronous rounds from q0.  Fully deterministic
// in (q0, topology, seed, options); the load trajectory does not depend on
// the strategy because destinations are drawn per bin in ascending order.
RunResult run(const Configuration& q0, const Topology& topology, std::int64_t rounds,
              SeedCtx seed, const RunOptions& options = {});

} // namespace rbb
