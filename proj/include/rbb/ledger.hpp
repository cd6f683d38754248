#pragma once
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <vector>

#include "rbb/config.hpp"
#include "rbb/rng.hpp"

namespace rbb {

enum class Strategy { Fifo, Lifo, Random };

// Pops one ball identity from a non-empty queue according to the strategy.
// FIFO takes the oldest arrival, LIFO the newest, RANDOM a uniform pick.
int select_ball(std::deque<int>& queue, Strategy s, CounterRng& rng);

// Ball identities behind a Configuration: per-bin queues plus per-ball
// visit/progress/waiting bookkeeping.  Owned by a single trial.
class BallLedger {
public:
    BallLedger() = default;
    // Balls 0..m-1 are dealt to bins in ascending bin order.
    BallLedger(const Configuration& q0, bool track_visits, bool track_waiting);

    bool empty() const { return queues_.empty(); }
    int n() const { return n_; }
    int ball_count() const { return ball_count_; }

    const std::deque<int>& queue(int bin) const { return queues_.at(static_cast<std::size_t>(bin)); }
    int ball_bin(int ball) const { return ball_bin_.at(static_cast<std::size_t>(ball)); }
    std::int64_t progress(int ball) const { return progress_.at(static_cast<std::size_t>(ball)); }
    std::int64_t min_progress() const;

    bool track_visits() const { return track_visits_; }
    bool visited(int ball, int bin) const;
    int visited_count(int ball) const { return visited_count_.at(static_cast<std::size_t>(ball)); }
    // First round at which the ball had visited all n bins, or -1.
    std::int64_t cover_round(int ball) const { return cover_round_.at(static_cast<std::size_t>(ball)); }
    bool all_covered() const { return covered_balls_ == ball_count_; }
    std::int64_t parallel_cover_round() const;

    bool track_waiting() const { return track_waiting_; }
    std::int64_t waiting_time_max() const { return waiting_time_max_; }
    // FIFO contract: wait of every selected ball <= load of its bin right
    // after the round it was enqueued.  Counted, never silently dropped.
    std::int64_t waiting_violations() const { return waiting_violations_; }

    // Round execution hooks (used by the run engine and fault injection).
    int pop_from(int bin, Strategy s, CounterRng& selection_rng, std::int64_t round);
    void push_to(int ball, int bin, std::int64_t round);
    void finish_round(const Configuration& q, const std::vector<int>& moved_balls);
    // Rebuild all queues from a full assignment ball -> bin (ascending ball
    // identity within each bin).  Visited/progress/waiting state persists.
    void reassign(const std::vector<int>& ball_to_bin, const Configuration& q,
                  std::int64_t round);

    // Exact consistency with a load vector (used by debug checks and tests).
    bool consistent_with(const Configuration& q) const;

private:
    void mark_visited(int ball, int bin, std::int64_t round);

    int n_ = 0;
    int ball_count_ = 0;
    bool track_visits_ = false;
    bool track_waiting_ = false;

    std::vector<std::deque<int>> queues_;
    std::vector<int> ball_bin_;
    std::vector<std::int64_t> progress_;

    std::vector<std::uint64_t> visited_bits_; // flat ball_count x words(n)
    std::size_t words_per_ball_ = 0;
    std::vector<int> visited_count_;
    std::vector<std::int64_t> cover_round_;
    int covered_balls_ = 0;

    std::vector<std::int64_t> enqueue_round_;
    std::vector<std::int64_t> enqueue_load_;
    std::vector<int> enqueue_bin_;
    std::int64_t waiting_time_max_ = 0;
    std::int64_t waiting_violations_ = 0;
};

} // namespace rbb
