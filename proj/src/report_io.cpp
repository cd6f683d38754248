#include "rbb/report_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rbb {

namespace {
constexpr const char* kArtifactVersion = "0.1.0";

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}
} // namespace

std::string to_string(Strategy s) {
    switch (s) {
    case Strategy::Fifo: return "fifo";
    case Strategy::Lifo: return "lifo";
    case Strategy::Random: return "random";
    }
    return "?";
}

std::optional<Strategy> parse_strategy(const std::string& name) {
    if (name == "fifo") return Strategy::Fifo;
    if (name == "lifo") return Strategy::Lifo;
    if (name == "random") return Strategy::Random;
    return std::nullopt;
}

std::string to_string(Topology::Kind kind) {
    switch (kind) {
    case Topology::Kind::Complete: return "complete";
    case Topology::Kind::Ring: return "ring";
    case Topology::Kind::DRegularRandom: return "d_regular";
    }
    return "?";
}

std::optional<Topology::Kind> parse_topology_kind(const std::string& name) {
    if (name == "complete") return Topology::Kind::Complete;
    if (name == "ring") return Topology::Kind::Ring;
    if (name == "d_regular") return Topology::Kind::DRegularRandom;
    return std::nullopt;
}

std::string to_string(FaultSchedule::Kind kind) {
    switch (kind) {
    case FaultSchedule::Kind::AllInOne: return "all_in_one";
    case FaultSchedule::Kind::Permute: return "permute";
    case FaultSchedule::Kind::Custom: return "custom";
    }
    return "?";
}

std::optional<FaultSchedule::Kind> parse_fault_kind(const std::string& name) {
    if (name == "all_in_one") return FaultSchedule::Kind::AllInOne;
    if (name == "permute") return FaultSchedule::Kind::Permute;
    if (name == "custom") return FaultSchedule::Kind::Custom;
    return std::nullopt;
}

nlohmann::json spec_to_json(const ExperimentSpec& spec) {
    return nlohmann::json{
        {"kind", to_string(spec.kind)},
        {"n", spec.n},
        {"balls", spec.ball_count()},
        {"rounds", spec.rounds},
        {"trials", spec.trials},
        {"strategy", to_string(spec.strategy)},
        {"topology", to_string(spec.topology)},
        {"topology_degree", spec.topology_degree},
        {"threshold_c", spec.threshold_c},
        {"beta", spec.beta},
        {"fault_period", spec.fault_period},
        {"fault_kind", to_string(spec.fault_kind)},
        {"fault_target", spec.fault_target},
        {"seed", spec.master_seed},
    };
}

nlohmann::json report_to_json(const SummaryReport& report) {
    nlohmann::json lines = nlohmann::json::array();
    for (const auto& line : report.lines) {
        nlohmann::json j{{"name", line.name}, {"value", line.value}};
        if (line.ci) j["ci"] = {line.ci->first, line.ci->second};
        if (line.bound) j["bound"] = *line.bound;
        if (line.exact)
            // Exact rationals stay exact: integer strings, never doubles.
            j["exact"] = {{"num", line.exact->first}, {"den", line.exact->second}};
        if (line.pass) j["pass"] = *line.pass;
        if (!line.note.empty()) j["note"] = line.note;
        lines.push_back(std::move(j));
    }
    return nlohmann::json{{"artifact_version", kArtifactVersion},
                          {"kind", to_string(report.spec.kind)},
                          {"spec", spec_to_json(report.spec)},
                          {"all_pass", report.all_pass()},
                          {"lines", std::move(lines)}};
}

ExperimentSpec load_spec_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spec file: " + path.string());

    ExperimentSpec spec;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("spec file line " + std::to_string(line_no) +
                                     ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        auto bad = [&](const std::string& what) {
            return std::runtime_error("spec file line " + std::to_string(line_no) + ": " + what);
        };
        if (key == "kind") {
            auto kind = parse_experiment_kind(value);
            if (!kind) throw bad("unknown kind '" + value + "'");
            spec.kind = *kind;
        } else if (key == "n") {
            spec.n = std::stoi(value);
        } else if (key == "balls") {
            spec.balls = std::stoll(value);
        } else if (key == "rounds") {
            spec.rounds = std::stoll(value);
        } else if (key == "trials") {
            spec.trials = std::stoi(value);
        } else if (key == "strategy") {
            auto s = parse_strategy(value);
            if (!s) throw bad("unknown strategy '" + value + "'");
            spec.strategy = *s;
        } else if (key == "topology") {
            auto t = parse_topology_kind(value);
            if (!t) throw bad("unknown topology '" + value + "'");
            spec.topology = *t;
        } else if (key == "topology_degree") {
            spec.topology_degree = std::stoi(value);
        } else if (key == "threshold_c") {
            spec.threshold_c = std::stod(value);
        } else if (key == "beta") {
            spec.beta = std::stod(value);
        } else if (key == "fault_period") {
            spec.fault_period = std::stoll(value);
        } else if (key == "fault_kind") {
            auto k = parse_fault_kind(value);
            if (!k) throw bad("unknown fault kind '" + value + "'");
            spec.fault_kind = *k;
        } else if (key == "fault_target") {
            spec.fault_target = std::stoi(value);
        } else if (key == "seed") {
            spec.master_seed = std::stoull(value);
        } else {
            throw bad("unknown key '" + key + "'");
        }
    }
    return spec;
}

namespace {
constexpr const char* kCsvHeader =
    "round,max_load,empty_bins,overloaded_bins,tetris_max_load,coupled_flag,dominance_flag\n";
}

std::string trajectory_csv(const Trajectory& trajectory) {
    std::ostringstream out;
    out << kCsvHeader;
    for (const auto& row : trajectory.rows)
        out << row.round << ',' << row.max_load << ',' << row.empty_bins << ','
            << row.overloaded_bins << ",,,\n";
    return out.str();
}

std::string coupled_trajectory_csv(const CoupledTrajectory& trajectory) {
    std::ostringstream out;
    out << kCsvHeader;
    for (std::size_t i = 0; i < trajectory.original.rows.size(); ++i) {
        const auto& row = trajectory.original.rows[i];
        out << row.round << ',' << row.max_load << ',' << row.empty_bins << ','
            << row.overloaded_bins << ',' << trajectory.tetris.rows[i].max_load << ','
            << static_cast<int>(trajectory.coupled[i]) << ','
            << static_cast<int>(trajectory.dominance[i]) << '\n';
    }
    return out.str();
}

OutputBundle::OutputBundle(std::filesystem::path directory, const ExperimentSpec& spec,
                           const std::string& command)
    : dir_(std::move(directory)), spec_(spec), command_(command) {
    std::filesystem::create_directories(dir_);
    rewrite_manifest(); // manifest exists before any data file
}

void OutputBundle::rewrite_manifest() {
    nlohmann::json manifest{{"artifact_version", kArtifactVersion},
                            {"command", command_},
                            {"spec", spec_to_json(spec_)},
                            {"master_seed", spec_.master_seed},
                            {"outputs", outputs_}};
    std::ofstream out(dir_ / "manifest.json");
    if (!out) throw std::runtime_error("cannot write manifest in " + dir_.string());
    out << manifest.dump(2) << '\n';
}

std::filesystem::path OutputBundle::write_csv(const std::string& name,
                                              const std::string& contents) {
    auto path = dir_ / name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << contents;
    outputs_.push_back(name);
    rewrite_manifest();
    return path;
}

std::filesystem::path OutputBundle::write_summary(const SummaryReport& report) {
    auto path = dir_ / "summary.json";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << report_to_json(report).dump(2) << '\n';
    outputs_.push_back("summary.json");
    rewrite_manifest();
    return path;
}

} // namespace rbb
