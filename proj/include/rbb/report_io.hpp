#pragma once
#include <filesystem>
#include <string>

#include <json.hpp>

#include "rbb/coupling.hpp"
#include "rbb/harness.hpp"
#include "rbb/trajectory.hpp"

namespace rbb {

std::string to_string(Strategy s);
std::optional<Strategy> parse_strategy(const std::string& name);
std::string to_string(Topology::Kind kind);
std::optional<Topology::Kind> parse_topology_kind(const std::string& name);
std::string to_string(FaultSchedule::Kind kind);
std::optional<FaultSchedule::Kind> parse_fault_kind(const std::string& name);

nlohmann::json spec_to_json(const ExperimentSpec& spec);
nlohmann::json report_to_json(const SummaryReport& report);

// Flat key-value experiment file ("key = value" lines, '#' comments).
ExperimentSpec load_spec_file(const std::filesystem::path& path);

// Fixed CSV schema: round,max_load,empty_bins,overloaded_bins,
// tetris_max_load,coupled_flag,dominance_flag (last three blank when absent).
std::string trajectory_csv(const Trajectory& trajectory);
std::string coupled_trajectory_csv(const CoupledTrajectory& trajectory);

// Writes manifest.json first, then the data files; returns the manifest path.
class OutputBundle {
public:
    OutputBundle(std::filesystem::path directory, const ExperimentSpec& spec,
                 const std::string& command);

    const std::filesystem::path& directory() const { return dir_; }
    std::filesystem::path write_csv(const std::string& name, const std::string& contents);
    std::filesystem::path write_summary(const SummaryReport& report);

private:
    void rewrite_manifest();

    std::filesystem::path dir_;
    ExperimentSpec spec_;
    std::string command_;
    std::vector<std::string> outputs_;
};

} // namespace rbb
