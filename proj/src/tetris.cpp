#include "rbb/tetris.hpp"

#include <algorithm>
#include <stdexcept>

namespace rbb {

TetrisState make_tetris(std::vector<std::int64_t> loads) {
    if (loads.size() < 4) throw std::invalid_argument("tetris needs n >= 4");
    for (auto v : loads)
        if (v < 0) throw std::invalid_argument("negative bin load");
    TetrisState s;
    s.last_empty.assign(loads.size(), 0);
    s.loads = std::move(loads);
    return s;
}

void ArrivalCounter::record_round(std::vector<std::uint32_t> counts) {
    if (static_cast<int>(counts.size()) != n_)
        throw std::invalid_argument("arrival count vector has wrong size");
    per_round_.push_back(std::move(counts));
}

std::uint32_t ArrivalCounter::arrivals(int bin, std::int64_t round) const {
    if (round < 1 || round > recorded_rounds())
        throw std::out_of_range("round outside recorded history");
    return per_round_[static_cast<std::size_t>(round - 1)].at(static_cast<std::size_t>(bin));
}

std::int64_t ArrivalCounter::arrivals_in_window(int bin, std::int64_t tau1,
                                                std::int64_t tau2) const {
    if (recorded_rounds() == 0) throw std::out_of_range("no recorded history");
    if (tau1 > tau2 || tau1 < 1 || tau2 > recorded_rounds())
        throw std::out_of_range("window outside recorded history");
    std::int64_t total = 0;
    for (std::int64_t t = tau1; t <= tau2; ++t)
        total += per_round_[static_cast<std::size_t>(t - 1)].at(static_cast<std::size_t>(bin));
    return total;
}

void tetris_step_forced(TetrisState& s, std::span<const int> arrival_bins,
                        ArrivalCounter* counter) {
    const int n = static_cast<int>(s.loads.size());
    if (static_cast<std::int64_t>(arrival_bins.size()) != tetris_arrivals_per_round(n))
        throw std::invalid_argument("tetris round needs exactly floor(3n/4) arrivals");

    ++s.round;
    for (auto& v : s.loads)
        if (v > 0) --v;

    std::vector<std::uint32_t> counts;
    if (counter) counts.assign(static_cast<std::size_t>(n), 0);
    for (int u : arrival_bins) {
        if (u < 0 || u >= n) throw std::invalid_argument("arrival bin out of range");
        ++s.loads[static_cast<std::size_t>(u)];
        if (counter) ++counts[static_cast<std::size_t>(u)];
    }
    if (counter) counter->record_round(std::move(counts));

    for (int u = 0; u < n; ++u)
        if (s.loads[static_cast<std::size_t>(u)] == 0)
            s.last_empty[static_cast<std::size_t>(u)] = s.round;
}

void tetris_step(TetrisState& s, CounterRng& rng, ArrivalCounter* counter) {
    const int n = static_cast<int>(s.loads.size());
    const auto k = tetris_arrivals_per_round(n);
    std::vector<int> arrivals(static_cast<std::size_t>(k));
    for (auto& u : arrivals)
        u = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    tetris_step_forced(s, arrivals, counter);
}

TetrisRunResult run_tetris(const TetrisState& s0, std::int64_t rounds, CounterRng& rng,
                           ArrivalCounter* counter, std::int64_t record_every) {
    if (rounds < 0) throw std::invalid_argument("negative round count");
    const int n = static_cast<int>(s0.loads.size());

    TetrisRunResult result;
    result.final_state = s0;
    result.first_empty.assign(static_cast<std::size_t>(n), std::nullopt);

    auto summarize = [&](std::int64_t round) {
        TrajectoryRow row;
        row.round = round;
        for (int u = 0; u < n; ++u) {
            auto v = result.final_state.loads[static_cast<std::size_t>(u)];
            if (v == 0) {
                ++row.empty_bins;
                if (!result.first_empty[static_cast<std::size_t>(u)])
                    result.first_empty[static_cast<std::size_t>(u)] = round;
            } else if (v >= 2) {
                ++row.overloaded_bins;
            }
            if (v > row.max_load) row.max_load = v;
        }
        return row;
    };

    TrajectoryRow row = summarize(0);
    result.trajectory.rows.push_back(row);
    result.running_max_load = row.max_load;

    for (std::int64_t t = 1; t <= rounds; ++t) {
        tetris_step(result.final_state, rng, counter);
        row = summarize(t);
        result.running_max_load = std::max(result.running_max_load, row.max_load);
        if (record_every <= 1 || t % record_every == 0 || t == rounds)
            result.trajectory.rows.push_back(row);
    }
    return result;
}

std::vector<std::optional<std::int64_t>> first_empty_times(const TetrisState& s0,
                                                           std::int64_t rounds,
                                                           CounterRng& rng) {
    if (rounds < 1) throw std::invalid_argument("first_empty_times needs rounds >= 1");
    return run_tetris(s0, rounds, rng, nullptr, rounds).first_empty;
}

} // namespace rbb
