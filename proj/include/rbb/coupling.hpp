#pragma once
#include <cstdint>
#include <vector>

#include "rbb/config.hpp"
#include "rbb/rng.hpp"
#include "rbb/tetris.hpp"
#include "rbb/trajectory.hpp"

namespace rbb {

struct CoupledFlags {
    bool coupled = false;     // case i applied (|W| <= 3n/4 before the round)
    bool empty_event = false; // count_empty >= n/4 after the round
    bool dominance = false;   // tetris load >= original load in every bin
};

struct CoupledTrajectory {
    Trajectory original;
    Trajectory tetris;
    std::vector<std::uint8_t> coupled;
    std::vector<std::uint8_t> empty_event;
    std::vector<std::uint8_t> dominance;
    std::int64_t original_running_max = 0;
    std::int64_t tetris_running_max = 0;
    bool case_ii_occurred = false;
    bool dominance_held = true; // through the last executed round
    std::int64_t case_ii_rounds = 0;
    std::int64_t dominance_violation_rounds = 0;
};

// One coupled round on shared randomness.  Case i (|W| <= 3n/4): the first
// |W| tetris arrivals reuse the destination draws of the non-empty bins in
// ascending bin order; the rest are fresh uniform draws.  Case ii: all
// arrivals are fresh.  Either way each process keeps its marginal law.
CoupledFlags coupled_step(Configuration& q, TetrisState& s, CounterRng& dest_rng,
                          CounterRng& free_rng, ArrivalCounter* counter = nullptr);

// Both processes from the same q0 with sum(q0) = n, >= n/4 empty bins and
// 4 | n.  Continues through case-ii rounds, flagging dominance as void.
CoupledTrajectory coupled_run(const Configuration& q0, std::int64_t rounds, SeedCtx seed,
                              std::int64_t record_every = 1);

} // namespace rbb
