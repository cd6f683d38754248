#pragma once
#include <cstdint>
#include <vector>

namespace rbb {

struct TrajectoryRow {
    std::int64_t round = 0;
    std::int64_t max_load = 0;
    int empty_bins = 0;
    int overloaded_bins = 0;
};

// Per-round summary statistics of one run; row 0 is the initial state.
struct Trajectory {
    std::vector<TrajectoryRow> rows;

    std::int64_t running_max_load() const {
        std::int64_t m = 0;
        for (const auto& r : rows)
            if (r.max_load > m) m = r.max_load;
        return m;
    }
};

} // namespace rbb
