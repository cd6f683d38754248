#include "rbb/ledger.hpp"

#include <algorithm>

namespace rbb {

int select_ball(std::deque<int>& queue, Strategy s, CounterRng& rng) {
    if (queue.empty()) throw std::logic_error("select_ball on empty queue");
    int ball;
    switch (s) {
    case Strategy::Fifo:
        ball = queue.front();
        queue.pop_front();
        break;
    case Strategy::Lifo:
        ball = queue.back();
        queue.pop_back();
        break;
    case Strategy::Random: {
        auto idx = uniform_below(rng, queue.size());
        auto it = queue.begin() + static_cast<std::ptrdiff_t>(idx);
        ball = *it;
        queue.erase(it);
        break;
    }
    default:
        throw std::logic_error("unknown strategy");
    }
    return ball;
}

BallLedger::BallLedger(const Configuration& q0, bool track_visits, bool track_waiting)
    : n_(q0.n),
      ball_count_(static_cast<int>(q0.m)),
      track_visits_(track_visits),
      track_waiting_(track_waiting) {
    queues_.resize(static_cast<std::size_t>(n_));
    ball_bin_.resize(static_cast<std::size_t>(ball_count_));
    progress_.assign(static_cast<std::size_t>(ball_count_), 0);

    if (track_visits_) {
        words_per_ball_ = (static_cast<std::size_t>(n_) + 63) / 64;
        visited_bits_.assign(static_cast<std::size_t>(ball_count_) * words_per_ball_, 0);
        visited_count_.assign(static_cast<std::size_t>(ball_count_), 0);
        cover_round_.assign(static_cast<std::size_t>(ball_count_), -1);
    }
    if (track_waiting_) {
        enqueue_round_.assign(static_cast<std::size_t>(ball_count_), 0);
        enqueue_load_.assign(static_cast<std::size_t>(ball_count_), 0);
        enqueue_bin_.assign(static_cast<std::size_t>(ball_count_), 0);
    }

    int ball = 0;
    for (int u = 0; u < n_; ++u) {
        for (std::int64_t j = 0; j < q0.loads[static_cast<std::size_t>(u)]; ++j, ++ball) {
            queues_[static_cast<std::size_t>(u)].push_back(ball);
            ball_bin_[static_cast<std::size_t>(ball)] = u;
            if (track_visits_) mark_visited(ball, u, 0);
            if (track_waiting_) {
                enqueue_round_[static_cast<std::size_t>(ball)] = 0;
                enqueue_load_[static_cast<std::size_t>(ball)] =
                    q0.loads[static_cast<std::size_t>(u)];
                enqueue_bin_[static_cast<std::size_t>(ball)] = u;
            }
        }
    }
}

std::int64_t BallLedger::min_progress() const {
    return *std::min_element(progress_.begin(), progress_.end());
}

bool BallLedger::visited(int ball, int bin) const {
    if (!track_visits_) throw std::logic_error("visit tracking disabled");
    auto word = visited_bits_[static_cast<std::size_t>(ball) * words_per_ball_ +
                              static_cast<std::size_t>(bin) / 64];
    return (word >> (static_cast<unsigned>(bin) % 64)) & 1u;
}

std::int64_t BallLedger::parallel_cover_round() const {
    std::int64_t worst = 0;
    for (auto r : cover_round_) {
        if (r < 0) return -1;
        worst = std::max(worst, r);
    }
    return worst;
}

void BallLedger::mark_visited(int ball, int bin, std::int64_t round) {
    auto& word = visited_bits_[static_cast<std::size_t>(ball) * words_per_ball_ +
                               static_cast<std::size_t>(bin) / 64];
    std::uint64_t bit = 1ULL << (static_cast<unsigned>(bin) % 64);
    if (!(word & bit)) {
        word |= bit;
        if (++visited_count_[static_cast<std::size_t>(ball)] == n_) {
            cover_round_[static_cast<std::size_t>(ball)] = round;
            ++covered_balls_;
        }
    }
}

int BallLedger::pop_from(int bin, Strategy s, CounterRng& selection_rng, std::int64_t round) {
    int ball = select_ball(queues_[static_cast<std::size_t>(bin)], s, selection_rng);
    ++progress_[static_cast<std::size_t>(ball)];
    if (track_waiting_) {
        std::int64_t wait = round - enqueue_round_[static_cast<std::size_t>(ball)];
        waiting_time_max_ = std::max(waiting_time_max_, wait);
        if (wait > enqueue_load_[static_cast<std::size_t>(ball)]) ++waiting_violations_;
    }
    return ball;
}

void BallLedger::push_to(int ball, int bin, std::int64_t round) {
    queues_[static_cast<std::size_t>(bin)].push_back(ball);
    ball_bin_[static_cast<std::size_t>(ball)] = bin;
    if (track_visits_) mark_visited(ball, bin, round);
    if (track_waiting_) {
        enqueue_round_[static_cast<std::size_t>(ball)] = round;
        enqueue_bin_[static_cast<std::size_t>(ball)] = bin;
    }
}

void BallLedger::finish_round(const Configuration& q, const std::vector<int>& moved_balls) {
    if (!track_waiting_) return;
    // Enqueue loads are final only once all of the round's arrivals landed.
    for (int ball : moved_balls)
        enqueue_load_[static_cast<std::size_t>(ball)] =
            q.loads[static_cast<std::size_t>(enqueue_bin_[static_cast<std::size_t>(ball)])];
}

void BallLedger::reassign(const std::vector<int>& ball_to_bin, const Configuration& q,
                          std::int64_t round) {
    if (ball_to_bin.size() != static_cast<std::size_t>(ball_count_))
        throw std::invalid_argument("reassign size mismatch");
    for (auto& queue : queues_) queue.clear();
    for (int ball = 0; ball < ball_count_; ++ball) {
        int bin = ball_to_bin[static_cast<std::size_t>(ball)];
        queues_[static_cast<std::size_t>(bin)].push_back(ball);
        ball_bin_[static_cast<std::size_t>(ball)] = bin;
        if (track_visits_) mark_visited(ball, bin, round);
        if (track_waiting_) {
            enqueue_round_[static_cast<std::size_t>(ball)] = round;
            enqueue_bin_[static_cast<std::size_t>(ball)] = bin;
            enqueue_load_[static_cast<std::size_t>(ball)] = q.loads[static_cast<std::size_t>(bin)];
        }
    }
    if (!consistent_with(q)) throw std::logic_error("reassign inconsistent with loads");
}

bool BallLedger::consistent_with(const Configuration& q) const {
    if (q.n != n_ || q.m != ball_count_) return false;
    for (int u = 0; u < n_; ++u) {
        if (static_cast<std::int64_t>(queues_[static_cast<std::size_t>(u)].size()) !=
            q.loads[static_cast<std::size_t>(u)])
            return false;
        for (int ball : queues_[static_cast<std::size_t>(u)])
            if (ball_bin_[static_cast<std::size_t>(ball)] != u) return false;
    }
    return true;
}

} // namespace rbb
