#include "rbb/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "rbb/run.hpp"

namespace rbb {

double legitimacy_threshold(int n, double c) {
    if (n < 2) throw std::invalid_argument("n must be >= 2");
    if (!(c > 0.0)) throw std::invalid_argument("threshold constant must be positive");
    return c * std::log(static_cast<double>(n));
}

bool is_legitimate(const Configuration& q, double c) {
    return static_cast<double>(max_load(q)) <= legitimacy_threshold(q.n, c);
}

std::optional<std::int64_t> convergence_time(const Configuration& q0, double c,
                                             std::int64_t t_max, SeedCtx seed) {
    if (q0.m != q0.n) throw std::invalid_argument("convergence time assumes m = n");
    RunOptions opts;
    opts.with_ledger = false;
    opts.legitimacy_threshold = legitimacy_threshold(q0.n, c);
    opts.stop_when_legitimate = true;
    opts.record_every = t_max; // only endpoints matter here
    auto result = run(q0, Topology::complete(q0.n), t_max, seed, opts);
    return result.first_legitimate_round;
}

CoverResult cover_time(const Configuration& q0, std::int64_t t_max, SeedCtx seed,
                       const std::optional<FaultSchedule>& faults) {
    RunOptions opts;
    opts.strategy = Strategy::Fifo;
    opts.with_ledger = true;
    opts.track_visits = true;
    opts.track_waiting = true;
    opts.stop_when_covered = true;
    opts.faults = faults;
    opts.record_every = t_max;
    auto result = run(q0, Topology::complete(q0.n), t_max, seed, opts);

    CoverResult out;
    out.ball_cover_rounds.reserve(static_cast<std::size_t>(result.ledger.ball_count()));
    for (int ball = 0; ball < result.ledger.ball_count(); ++ball)
        out.ball_cover_rounds.push_back(result.ledger.cover_round(ball));
    auto parallel = result.ledger.parallel_cover_round();
    if (parallel >= 0) out.parallel_cover_round = parallel;
    out.waiting_time_max = result.ledger.waiting_time_max();
    out.waiting_violations = result.ledger.waiting_violations();
    out.min_progress = result.ledger.min_progress();
    return out;
}

std::int64_t progress(const BallLedger& ledger, int ball) { return ledger.progress(ball); }

std::int64_t waiting_time_max(const BallLedger& ledger) { return ledger.waiting_time_max(); }

} // namespace rbb
