#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "rbb/config.hpp"
#include "rbb/fault.hpp"
#include "rbb/ledger.hpp"
#include "rbb/rng.hpp"

namespace rbb {

double legitimacy_threshold(int n, double c);

// Max load at most c * ln(n).
bool is_legitimate(const Configuration& q, double c);

// First round t <= t_max with a legitimate configuration; nullopt if the
// run never got there.  Load-only simulation on the complete graph.
std::optional<std::int64_t> convergence_time(const Configuration& q0, double c,
                                             std::int64_t t_max, SeedCtx seed);

struct CoverResult {
    std::vector<std::int64_t> ball_cover_rounds; // -1 = not covered within t_max
    std::optional<std::int64_t> parallel_cover_round;
    std::int64_t waiting_time_max = 0;
    std::int64_t waiting_violations = 0;
    std::int64_t min_progress = 0;
};

// FIFO run with ball tracking until every ball visited every bin (or t_max).
CoverResult cover_time(const Configuration& q0, std::int64_t t_max, SeedCtx seed,
                       const std::optional<FaultSchedule>& faults = std::nullopt);

// Selections of the ball so far; with m = 1 this equals the round count.
std::int64_t progress(const BallLedger& ledger, int ball);
std::int64_t waiting_time_max(const BallLedger& ledger);

} // namespace rbb
