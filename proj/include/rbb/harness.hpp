#pragma once
#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rbb/config.hpp"
#include "rbb/fault.hpp"
#include "rbb/ledger.hpp"
#include "rbb/rng.hpp"
#include "rbb/stats.hpp"

namespace rbb {

enum class ExperimentKind {
    Stability,
    Stabilize,
    Tetris,
    Couple,
    Cover,
    ExactCheck,
    EmptyBins,
    Conjecture,
};

std::string to_string(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment_kind(const std::string& name);

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::Stability;
    int n = 1024;
    std::int64_t balls = -1; // -1 means n
    std::int64_t rounds = 100000;
    int trials = 20;
    Strategy strategy = Strategy::Fifo;
    Topology::Kind topology = Topology::Kind::Complete;
    int topology_degree = 8;
    double threshold_c = 10.0;
    double beta = 2.0;
    std::int64_t fault_period = 0;
    FaultSchedule::Kind fault_kind = FaultSchedule::Kind::AllInOne;
    int fault_target = 0;
    std::uint64_t master_seed = 1;

    std::int64_t ball_count() const { return balls < 0 ? n : balls; }
    std::optional<FaultSchedule> fault_schedule() const;
};

struct MetricLine {
    std::string name;
    double value = 0.0;
    std::optional<std::pair<double, double>> ci;
    std::optional<double> bound;
    std::optional<std::pair<std::string, std::string>> exact; // numerator, denominator
    std::optional<bool> pass;
    std::string note;
};

struct SummaryReport {
    ExperimentSpec spec;
    std::vector<MetricLine> lines;

    bool all_pass() const;
    MetricLine& add(MetricLine line);
};

// Number of worker threads for trial fan-out: RBB_THREADS if set, else all
// available cores.
int trial_concurrency();

// Runs f(0..trials-1), possibly concurrently; results come back indexed by
// trial, so any fold over them is independent of the execution order.
template <class R, class F>
std::vector<R> map_trials(std::int64_t trials, F&& f) {
    std::vector<R> results(static_cast<std::size_t>(trials));
    int workers = std::min<std::int64_t>(trial_concurrency(), trials);
    if (workers <= 1) {
        for (std::int64_t i = 0; i < trials; ++i)
            results[static_cast<std::size_t>(i)] = f(i);
        return results;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::int64_t i = next.fetch_add(1);
                if (i >= trials || failed.load()) return;
                try {
                    results[static_cast<std::size_t>(i)] = f(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return results;
}

// Legitimate starting configuration with at least n/4 empty bins: the usual
// one-shot uniform allocation of m balls, resampled in the (rare) case the
// draw misses either requirement.
Configuration legitimate_start(int n, std::int64_t m, double threshold_c, SeedCtx seed,
                               bool require_quarter_empty = true);

// ---- claim-verification suites -------------------------------------------
// Each returns one report whose pass/fail lines implement the corresponding
// empirical claim at the stated scale.

SummaryReport exact_check_suite(std::uint64_t master_seed, std::int64_t trials = 1000000);
SummaryReport empty_bins_suite(int n, int trials, std::int64_t rounds,
                               std::uint64_t master_seed);
SummaryReport tetris_suite(int n, int window_samples, int emptying_trials,
                           std::uint64_t master_seed);
SummaryReport tetris_maxload_suite(int n, int trials, std::int64_t rounds, double beta,
                                   std::uint64_t master_seed);
SummaryReport couple_suite(int n, int trials, std::int64_t rounds,
                           std::uint64_t master_seed);
SummaryReport stability_suite(const std::vector<int>& ns, int trials, std::int64_t rounds,
                              double threshold_c, std::uint64_t master_seed);
SummaryReport stabilize_suite(const std::vector<int>& ns, int trials, double threshold_c,
                              std::uint64_t master_seed);
SummaryReport cover_suite(const std::vector<int>& ns, int trials,
                          std::uint64_t master_seed, std::int64_t baseline_trials = 1000000);
SummaryReport adversary_suite(int n, int trials, std::int64_t fault_period,
                              std::uint64_t master_seed);
SummaryReport conjecture_suite(Topology::Kind kind, int n, int degree, int trials,
                               std::int64_t rounds, std::uint64_t master_seed);

// Single-spec front end used by the CLI; dispatches to the suites above.
SummaryReport run_experiment(const ExperimentSpec& spec);

} // namespace rbb
