// Acceptance battery: one pass/fail line per criterion, nonzero exit on any
// failure.  Scales are the contract scales; runtime is minutes on one core.
#include <cstdio>
#include <string>
#include <vector>

#include "rbb/config.hpp"
#include "rbb/harness.hpp"
#include "rbb/run.hpp"

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, what.c_str());
    if (!pass) ++g_failures;
    std::fflush(stdout);
}

void report_suite(int criterion, const rbb::SummaryReport& r, const std::string& what) {
    bool pass = r.all_pass();
    std::string detail = what;
    if (!pass)
        for (const auto& line : r.lines)
            if (line.pass && !*line.pass)
                detail += " [failed: " + line.name + " = " + std::to_string(line.value) + "]";
    report(criterion, pass, detail);
}

double line_value(const rbb::SummaryReport& r, const std::string& name, bool* found = nullptr) {
    for (const auto& line : r.lines)
        if (line.name == name) {
            if (found) *found = true;
            return line.value;
        }
    if (found) *found = false;
    return 0.0;
}

} // namespace

int main() {
    const std::uint64_t seed = 20240817;

    // 1. Deterministic invariant: overloaded <= empty for m = n, over at
    //    least 1e6 random steps across the size range.
    {
        std::int64_t steps = 0, violations = 0;
        for (int n : {4, 16, 64, 256, 1024, 4096}) {
            const auto topo = rbb::Topology::complete(n);
            const int trials = 4;
            const std::int64_t rounds = 50000;
            for (int trial = 0; trial < trials; ++trial) {
                rbb::SeedCtx ctx{seed + static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial)};
                rbb::CounterRng init = rbb::make_stream(ctx, rbb::StreamPurpose::InitialConfig);
                auto q0 = rbb::random_configuration(n, n, init);
                rbb::RunOptions opts;
                opts.with_ledger = false;
                opts.check_overloaded_invariant = true;
                opts.record_every = rounds;
                auto result = rbb::run(q0, topo, rounds, ctx, opts);
                steps += result.rounds_executed;
                violations += result.overloaded_invariant_violations;
            }
        }
        report(1, steps >= 1000000 && violations == 0,
               "overloaded <= empty over " + std::to_string(steps) + " random steps, " +
                   std::to_string(violations) + " violations");
    }

    // 2. Exact two-round counterexample, oracle + 1e6-trial frequencies.
    report_suite(2, rbb::exact_check_suite(seed, 1000000),
                 "exact 1/4, 3/8, 1/8 > 3/32 and Monte Carlo agreement");

    // 3. Empty-bins floor at n=1024 from flat and all-in-one starts.
    report_suite(3, rbb::empty_bins_suite(1024, 20, 100000, seed),
                 "count_empty >= n/4 at every observed round, both starts");

    // 4 + 5. Tetris arrival statistics and emptying within 5n rounds.
    {
        auto r = rbb::tetris_suite(1024, 10000, 100, seed);
        bool arrivals_ok = true, emptying_ok = true;
        for (const auto& line : r.lines) {
            if (!line.pass) continue;
            if (line.name.rfind("emptying", 0) == 0)
                emptying_ok = emptying_ok && *line.pass;
            else
                arrivals_ok = arrivals_ok && *line.pass;
        }
        report(4, arrivals_ok, "arrival mean 3/4 and window means (3/4)(delta+1), delta in {0,3,15}");
        report(5, emptying_ok, "every bin empty within 5n rounds, 100/100 trials");
    }

    // 6. Coupling dominance at n=256 over 1e4 rounds, 200 trials.
    report_suite(6, rbb::couple_suite(256, 200, 10000, seed),
                 "case ii never triggers, per-bin dominance everywhere");

    // 7 + part of 11. Stability from legitimate starts.
    auto stability = rbb::stability_suite({256, 1024, 4096}, 20, 100000, 10.0, seed);
    {
        bool pass = true;
        std::string detail = "max load <= 10 ln n at n in {256,1024,4096}, log-fit residuals <= 25%";
        for (const auto& line : stability.lines)
            if (line.pass && line.name != "fifo_waiting_violations" &&
                line.name != "min_progress_n_1024" && !*line.pass) {
                pass = false;
                detail += " [failed: " + line.name + "]";
            }
        report(7, pass, detail);
    }

    // 8. Self-stabilization from (n,0,...,0).
    report_suite(8, rbb::stabilize_suite({256, 1024, 4096}, 100, 10.0, seed),
                 "legitimate within 6n rounds, never before n - 10 ln n, 100/100");

    // 9. Cover time shape and the single-ball coupon-collector baseline.
    auto cover = rbb::cover_suite({64, 128, 256, 512}, 50, seed, 1000000);
    {
        bool pass = true;
        std::string detail =
            "parallel cover <= 4 n (ln n)^2 in 50/50, fit residuals <= 30%, n=4 baseline";
        for (const auto& line : cover.lines)
            if (line.pass && line.name != "fifo_waiting_violations" && !*line.pass) {
                pass = false;
                detail += " [failed: " + line.name + "]";
            }
        report(9, pass, detail);
    }

    // 10. Adversarial robustness under ALL_IN_ONE faults every 8n rounds.
    auto adversary = rbb::adversary_suite(1024, 20, 8192, seed);
    report_suite(10, adversary, "faulty cover time <= 3x fault-free mean, 20/20 trials");

    // 11. FIFO waiting bound and minimum progress, collected from 7, 9, 10.
    {
        bool found_wait_s = false, found_wait_c = false, found_wait_a = false,
             found_prog = false;
        double wait_s = line_value(stability, "fifo_waiting_violations", &found_wait_s);
        double wait_c = line_value(cover, "fifo_waiting_violations", &found_wait_c);
        double wait_a = line_value(adversary, "fifo_waiting_violations", &found_wait_a);
        bool prog_pass = false;
        for (const auto& line : stability.lines)
            if (line.name == "min_progress_n_1024") {
                found_prog = true;
                prog_pass = line.pass && *line.pass;
            }
        bool pass = found_wait_s && found_wait_c && found_wait_a && found_prog &&
                    wait_s == 0.0 && wait_c == 0.0 && wait_a == 0.0 && prog_pass;
        report(11, pass,
               "zero waiting-bound violations in criteria 7-10 runs; min progress >= T/(4 ln n)");
    }

    std::printf("%s (%d failure%s)\n", g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
                g_failures, g_failures == 1 ? "" : "s");
    return g_failures == 0 ? 0 : 1;
}
