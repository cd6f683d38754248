#pragma once
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rbb/config.hpp"
#include "rbb/rng.hpp"
#include "rbb/trajectory.hpp"

namespace rbb {

// Open-system auxiliary process: every non-empty bin loses one ball per
// round, then floor(3n/4) fresh balls arrive, each uniform over the bins.
struct TetrisState {
    std::vector<std::int64_t> loads;
    std::vector<std::int64_t> last_empty; // last round the bin was at 0 (0 = never)
    std::int64_t round = 0;
};

TetrisState make_tetris(std::vector<std::int64_t> loads); // n >= 4

inline std::int64_t tetris_arrivals_per_round(int n) { return (3LL * n) / 4; }

// Per-round per-bin arrival history; rounds are 1-based (round 0 has none).
class ArrivalCounter {
public:
    ArrivalCounter() = default;
    explicit ArrivalCounter(int n) : n_(n) {}

    int n() const { return n_; }
    std::int64_t recorded_rounds() const { return static_cast<std::int64_t>(per_round_.size()); }

    void record_round(std::vector<std::uint32_t> counts);
    std::uint32_t arrivals(int bin, std::int64_t round) const;
    std::int64_t arrivals_in_window(int bin, std::int64_t tau1, std::int64_t tau2) const;

private:
    int n_ = 0;
    std::vector<std::vector<std::uint32_t>> per_round_;
};

// One round with the arrival bins fixed by the caller (the coupling routes
// matched arrivals through here).  Count must equal floor(3n/4).
void tetris_step_forced(TetrisState& s, std::span<const int> arrival_bins,
                        ArrivalCounter* counter = nullptr);

void tetris_step(TetrisState& s, CounterRng& rng, ArrivalCounter* counter = nullptr);

struct TetrisRunResult {
    TetrisState final_state;
    Trajectory trajectory;
    std::int64_t running_max_load = 0;
    // Per-bin min{t <= T : load == 0}; nullopt if never within T.
    std::vector<std::optional<std::int64_t>> first_empty;
};

TetrisRunResult run_tetris(const TetrisState& s0, std::int64_t rounds, CounterRng& rng,
                           ArrivalCounter* counter = nullptr,
                           std::int64_t record_every = 1);

std::vector<std::optional<std::int64_t>> first_empty_times(const TetrisState& s0,
                                                           std::int64_t rounds,
                                                           CounterRng& rng);

} // namespace rbb
