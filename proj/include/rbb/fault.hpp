#pragma once
#include <cstdint>
#include <functional>
#include <optional>

#include "rbb/config.hpp"
#include "rbb/ledger.hpp"

namespace rbb {

// Adversarial reassignment of all balls, fired every `period` rounds.
struct FaultSchedule {
    enum class Kind { AllInOne, Permute, Custom };

    std::int64_t period = 0; // 0 disables faults
    Kind kind = Kind::AllInOne;
    int target_bin = 0;
    std::function<Configuration(const Configuration&, std::int64_t round)> custom;

    bool due(std::int64_t round) const { return period > 0 && round % period == 0; }
};

// Returns the injected configuration (same m) and, when a ledger is given,
// repositions every ball consistently.  Queue order after AllInOne and after
// a Custom rebuild is ascending ball identity.
Configuration apply_fault(const Configuration& q, const FaultSchedule& f,
                          std::int64_t round, CounterRng& rng,
                          BallLedger* ledger = nullptr);

} // namespace rbb
