// rbb: repeated balls-into-bins simulator, exact oracle and verification suites.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rbb/bounds.hpp"
#include "rbb/coupling.hpp"
#include "rbb/harness.hpp"
#include "rbb/metrics.hpp"
#include "rbb/report_io.hpp"
#include "rbb/run.hpp"

namespace {

struct CliState {
    rbb::ExperimentSpec spec;
    std::string strategy_name;
    std::string topology_name;
    std::string fault_kind_name;
    std::string spec_file;
    std::string out_dir;
    std::string command_line;
};

void add_common_flags(CLI::App* cmd, CliState& state) {
    cmd->add_option("--spec", state.spec_file, "experiment spec file (key = value lines)");
    cmd->add_option("--n", state.spec.n, "number of bins");
    cmd->add_option("--balls", state.spec.balls, "number of balls (default: n)");
    cmd->add_option("--rounds", state.spec.rounds, "horizon T");
    cmd->add_option("--trials", state.spec.trials, "number of trials");
    cmd->add_option("--seed", state.spec.master_seed, "master seed");
    cmd->add_option("--strategy", state.strategy_name, "fifo | lifo | random");
    cmd->add_option("--topology", state.topology_name, "complete | ring | d_regular");
    cmd->add_option("--degree", state.spec.topology_degree, "degree for d_regular");
    cmd->add_option("--threshold-c", state.spec.threshold_c, "legitimacy constant C");
    cmd->add_option("--beta", state.spec.beta, "failure exponent beta");
    cmd->add_option("--fault-period", state.spec.fault_period, "rounds between faults");
    cmd->add_option("--fault-kind", state.fault_kind_name, "all_in_one | permute");
    cmd->add_option("--out", state.out_dir, "output directory");
}

// Spec file first, then CLI flags override it.
void finalize_spec(const CLI::App* cmd, CliState& state) {
    if (!state.spec_file.empty()) {
        rbb::ExperimentSpec from_file = rbb::load_spec_file(state.spec_file);
        auto keep = [&](const std::string& flag) { return cmd->count(flag) > 0; };
        rbb::ExperimentSpec merged = from_file;
        if (keep("--n")) merged.n = state.spec.n;
        if (keep("--balls")) merged.balls = state.spec.balls;
        if (keep("--rounds")) merged.rounds = state.spec.rounds;
        if (keep("--trials")) merged.trials = state.spec.trials;
        if (keep("--seed")) merged.master_seed = state.spec.master_seed;
        if (keep("--degree")) merged.topology_degree = state.spec.topology_degree;
        if (keep("--threshold-c")) merged.threshold_c = state.spec.threshold_c;
        if (keep("--beta")) merged.beta = state.spec.beta;
        if (keep("--fault-period")) merged.fault_period = state.spec.fault_period;
        merged.kind = state.spec.kind;
        if (!keep("--strategy")) state.strategy_name = rbb::to_string(merged.strategy);
        if (!keep("--topology")) state.topology_name = rbb::to_string(merged.topology);
        if (!keep("--fault-kind")) state.fault_kind_name = rbb::to_string(merged.fault_kind);
        state.spec = merged;
    }
    if (!state.strategy_name.empty()) {
        auto s = rbb::parse_strategy(state.strategy_name);
        if (!s) throw CLI::ValidationError("--strategy", "unknown strategy");
        state.spec.strategy = *s;
    }
    if (!state.topology_name.empty()) {
        auto t = rbb::parse_topology_kind(state.topology_name);
        if (!t) throw CLI::ValidationError("--topology", "unknown topology");
        state.spec.topology = *t;
    }
    if (!state.fault_kind_name.empty()) {
        auto k = rbb::parse_fault_kind(state.fault_kind_name);
        if (!k) throw CLI::ValidationError("--fault-kind", "unknown fault kind");
        state.spec.fault_kind = *k;
    }
    if (state.spec.n < 2) throw CLI::ValidationError("--n", "need n >= 2");
    if (state.spec.trials < 1) throw CLI::ValidationError("--trials", "need trials >= 1");
    if (state.spec.rounds < 0) throw CLI::ValidationError("--rounds", "need rounds >= 0");
}

void print_report(const rbb::SummaryReport& report) {
    for (const auto& line : report.lines) {
        std::printf("%-40s %14.6g", line.name.c_str(), line.value);
        if (line.bound) std::printf("  bound %.6g", *line.bound);
        if (line.exact)
            std::printf("  exact %s/%s", line.exact->first.c_str(),
                        line.exact->second.c_str());
        if (line.ci) std::printf("  ci [%.3g, %.3g]", line.ci->first, line.ci->second);
        if (line.pass) std::printf("  %s", *line.pass ? "PASS" : "FAIL");
        if (!line.note.empty()) std::printf("  (%s)", line.note.c_str());
        std::printf("\n");
    }
}

rbb::Topology build_topology(const rbb::ExperimentSpec& spec) {
    switch (spec.topology) {
    case rbb::Topology::Kind::Complete: return rbb::Topology::complete(spec.n);
    case rbb::Topology::Kind::Ring: return rbb::Topology::ring(spec.n);
    case rbb::Topology::Kind::DRegularRandom:
        return rbb::Topology::d_regular_random(spec.n, spec.topology_degree,
                                               spec.master_seed);
    }
    throw std::logic_error("unreachable");
}

void emit(const CliState& state, const rbb::SummaryReport& report) {
    print_report(report);
    if (!state.out_dir.empty()) {
        rbb::OutputBundle bundle(state.out_dir, report.spec, state.command_line);
        bundle.write_summary(report);
    }
}

int cmd_simulate(CliState& state) {
    rbb::ExperimentSpec& spec = state.spec;
    const auto topo = build_topology(spec);
    std::vector<std::int64_t> initial(static_cast<std::size_t>(spec.n), 0);
    // Default start: one-shot uniform allocation of the requested balls.
    rbb::CounterRng init = rbb::make_stream({spec.master_seed, 0},
                                            rbb::StreamPurpose::InitialConfig);
    rbb::Configuration q0 = rbb::random_configuration(spec.n, spec.ball_count(), init);

    std::optional<rbb::OutputBundle> bundle;
    if (!state.out_dir.empty())
        bundle.emplace(state.out_dir, spec, state.command_line);

    rbb::SummaryReport report;
    report.spec = spec;
    for (int trial = 0; trial < spec.trials; ++trial) {
        rbb::RunOptions opts;
        opts.strategy = spec.strategy;
        opts.with_ledger = spec.ball_count() <= spec.n * 64; // skip ledger on huge m
        opts.track_waiting = opts.with_ledger;
        opts.faults = spec.fault_schedule();
        auto result = rbb::run(q0, topo, spec.rounds,
                               {spec.master_seed, static_cast<std::uint64_t>(trial)}, opts);
        rbb::MetricLine line;
        line.name = "running_max_load_trial_" + std::to_string(trial);
        line.value = static_cast<double>(result.running_max_load);
        report.lines.push_back(line);
        if (bundle) {
            std::string name = spec.trials == 1
                                   ? std::string("trajectory.csv")
                                   : "trajectory_" + std::to_string(trial) + ".csv";
            bundle->write_csv(name, rbb::trajectory_csv(result.trajectory));
        }
    }
    print_report(report);
    if (bundle) bundle->write_summary(report);
    return 0;
}

int cmd_couple(CliState& state) {
    rbb::ExperimentSpec& spec = state.spec;
    if (spec.n % 4 != 0) throw CLI::ValidationError("--n", "coupling needs n divisible by 4");
    if (spec.topology != rbb::Topology::Kind::Complete)
        throw CLI::ValidationError("--topology", "coupling is defined on the complete graph");

    std::optional<rbb::OutputBundle> bundle;
    if (!state.out_dir.empty())
        bundle.emplace(state.out_dir, spec, state.command_line);

    // Trajectory of trial 0 for inspection, suite statistics across trials.
    rbb::Configuration q0 =
        rbb::legitimate_start(spec.n, spec.n, spec.threshold_c, {spec.master_seed, 0}, true);
    auto traj = rbb::coupled_run(q0, spec.rounds, {spec.master_seed, 0});
    if (bundle) bundle->write_csv("trajectory.csv", rbb::coupled_trajectory_csv(traj));

    auto report = rbb::couple_suite(spec.n, spec.trials, spec.rounds, spec.master_seed);
    print_report(report);
    if (bundle) bundle->write_summary(report);
    return 0;
}

int cmd_bounds(CliState& state, double mu, double delta) {
    rbb::SummaryReport report;
    report.spec = state.spec;
    auto add = [&](const std::string& name, double value) {
        rbb::MetricLine line;
        line.name = name;
        line.value = value;
        report.lines.push_back(line);
    };
    add("chernoff_lower", rbb::chernoff_lower(mu, delta));
    add("chernoff_upper", rbb::chernoff_upper(mu, delta));
    add("between_empty_threshold",
        rbb::between_empty_threshold(state.spec.beta, state.spec.n));
    add("between_empty_bound",
        rbb::between_empty_bound(state.spec.beta, std::max<std::int64_t>(1, state.spec.rounds),
                                 state.spec.n));
    add("tetris_window_mean_delta_3", rbb::tetris_window_mean(3));
    emit(state, report);
    return 0;
}

int cmd_suite(CliState& state, bool quick) {
    const std::uint64_t seed = state.spec.master_seed;
    struct Entry {
        std::string name;
        rbb::SummaryReport report;
    };
    std::vector<Entry> entries;
    if (quick) {
        entries.push_back({"exact_check", rbb::exact_check_suite(seed, 200000)});
        entries.push_back({"empty_bins", rbb::empty_bins_suite(256, 5, 20000, seed)});
        entries.push_back({"tetris", rbb::tetris_suite(256, 2000, 20, seed)});
        entries.push_back({"couple", rbb::couple_suite(128, 20, 2000, seed)});
        entries.push_back(
            {"stability", rbb::stability_suite({64, 128, 256}, 5, 20000, 10.0, seed)});
        entries.push_back({"stabilize", rbb::stabilize_suite({64, 128, 256}, 20, 10.0, seed)});
        entries.push_back({"cover", rbb::cover_suite({64, 128, 256}, 10, seed, 100000)});
        entries.push_back({"adversary", rbb::adversary_suite(256, 5, 2048, seed)});
    } else {
        entries.push_back({"exact_check", rbb::exact_check_suite(seed)});
        entries.push_back({"empty_bins", rbb::empty_bins_suite(1024, 20, 100000, seed)});
        entries.push_back({"tetris", rbb::tetris_suite(1024, 10000, 100, seed)});
        entries.push_back({"tetris_maxload",
                           rbb::tetris_maxload_suite(1024, 50, 1024LL * 1024, 2.0, seed)});
        entries.push_back({"couple", rbb::couple_suite(256, 200, 10000, seed)});
        entries.push_back({"stability",
                           rbb::stability_suite({256, 1024, 4096}, 20, 100000, 10.0, seed)});
        entries.push_back(
            {"stabilize", rbb::stabilize_suite({256, 1024, 4096}, 100, 10.0, seed)});
        entries.push_back({"cover", rbb::cover_suite({64, 128, 256, 512}, 50, seed)});
        entries.push_back({"adversary", rbb::adversary_suite(1024, 20, 8192, seed)});
    }
    bool all_pass = true;
    for (auto& entry : entries) {
        std::printf("== %s ==\n", entry.name.c_str());
        print_report(entry.report);
        all_pass = all_pass && entry.report.all_pass();
        if (!state.out_dir.empty()) {
            rbb::OutputBundle bundle(std::filesystem::path(state.out_dir) / entry.name,
                                     entry.report.spec, state.command_line);
            bundle.write_summary(entry.report);
        }
    }
    std::printf("suite: %s\n", all_pass ? "ALL PASS" : "FAILURES PRESENT");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"repeated balls-into-bins simulation and verification toolkit"};
    app.require_subcommand(1);

    CliState state;
    for (int i = 0; i < argc; ++i) {
        if (i) state.command_line += ' ';
        state.command_line += argv[i];
    }

    auto* simulate = app.add_subcommand("simulate", "run the original process");
    auto* tetris = app.add_subcommand("tetris", "tetris process statistics");
    auto* couple = app.add_subcommand("couple", "coupled original/tetris run");
    auto* exact = app.add_subcommand("exact", "exact oracle checks (tiny n)");
    auto* cover = app.add_subcommand("cover", "parallel cover time (FIFO)");
    auto* stabilize = app.add_subcommand("stabilize", "self-stabilization time");
    auto* adversary = app.add_subcommand("adversary", "cover time under faults");
    auto* bounds = app.add_subcommand("bounds", "evaluate analytic bounds");
    auto* suite = app.add_subcommand("suite", "full verification battery");

    for (auto* cmd : {simulate, tetris, couple, exact, cover, stabilize, adversary, bounds, suite})
        add_common_flags(cmd, state);

    double mu = 100.0, delta = 0.25;
    bounds->add_option("--mu", mu, "expectation bound");
    bounds->add_option("--delta", delta, "deviation in (0,1)");
    bool quick = false;
    suite->add_flag("--quick", quick, "scaled-down battery");

    // Per-command defaults, applied before flags are read.
    simulate->preparse_callback([&](std::size_t) { state.spec.rounds = 1000; state.spec.trials = 1; });
    tetris->preparse_callback([&](std::size_t) { state.spec.n = 1024; state.spec.trials = 100; });
    couple->preparse_callback([&](std::size_t) { state.spec.n = 256; state.spec.rounds = 10000; });
    exact->preparse_callback([&](std::size_t) { state.spec.n = 2; state.spec.trials = 1000000; });
    cover->preparse_callback([&](std::size_t) { state.spec.n = 256; state.spec.trials = 50; });
    stabilize->preparse_callback([&](std::size_t) { state.spec.trials = 100; });
    adversary->preparse_callback([&](std::size_t) { state.spec.trials = 20; state.spec.fault_period = 0; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return 1;
    }

    try {
        finalize_spec(app.get_subcommands().front(), state);

        if (simulate->parsed()) {
            state.spec.kind = rbb::ExperimentKind::Stability;
            return cmd_simulate(state);
        }
        if (tetris->parsed()) {
            state.spec.kind = rbb::ExperimentKind::Tetris;
            if (state.spec.n % 4 != 0)
                throw CLI::ValidationError("--n", "tetris wants n divisible by 4");
            emit(state, rbb::tetris_suite(state.spec.n, 10000, state.spec.trials,
                                          state.spec.master_seed));
            return 0;
        }
        if (couple->parsed()) {
            state.spec.kind = rbb::ExperimentKind::Couple;
            return cmd_couple(state);
        }
        if (exact->parsed()) {
            state.spec.kind = rbb::ExperimentKind::ExactCheck;
            if (state.spec.n != 2)
                throw CLI::ValidationError("--n", "the exact counterexample is defined for n = 2");
            emit(state, rbb::exact_check_suite(state.spec.master_seed, state.spec.trials));
            return 0;
        }
        if (cover->parsed()) {
            state.spec.kind = rbb::ExperimentKind::Cover;
            emit(state, rbb::cover_suite({state.spec.n}, state.spec.trials,
                                         state.spec.master_seed,
                                         state.spec.n == 4 ? 1000000 : 0));
            return 0;
        }
        if (stabilize->parsed()) {
            state.spec.kind = rbb::ExperimentKind::Stabilize;
            emit(state, rbb::stabilize_suite({state.spec.n}, state.spec.trials,
                                             state.spec.threshold_c, state.spec.master_seed));
            return 0;
        }
        if (adversary->parsed()) {
            state.spec.kind = rbb::ExperimentKind::Cover;
            std::int64_t period =
                state.spec.fault_period > 0 ? state.spec.fault_period : 8LL * state.spec.n;
            state.spec.fault_period = period;
            emit(state, rbb::adversary_suite(state.spec.n, state.spec.trials, period,
                                             state.spec.master_seed));
            return 0;
        }
        if (bounds->parsed()) return cmd_bounds(state, mu, delta);
        if (suite->parsed()) return cmd_suite(state, quick);
        return 1;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
