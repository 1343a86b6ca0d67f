#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qres/config.hpp"

// Command implementations behind the qres executable. Each writes its
// artifacts under config.output_dir and returns a summary for stdout.
namespace qres::cli {

struct CommandResult {
    nlohmann::json summary;
    std::vector<std::string> files;
};

/// spectrum.csv (all angles) and spectrum.json.
CommandResult cmd_spectrum_classical(const config::RunConfig& config);

/// Needs exactly one angle. Writes overlay.csv, runs.jsonl, clusters.json and
/// states.json (one prepared state per cluster, input for cmd_filter). Throws
/// NumericalError when no run converges.
CommandResult cmd_spectrum_quantum(const config::RunConfig& config);

/// trajectory.csv, histogram.csv, speed.csv and estimate.json.
CommandResult cmd_trajectory(const config::RunConfig& config);

/// Reads config.filter.states_file; writes heatmap.csv and filter.json.
CommandResult cmd_filter(const config::RunConfig& config);

}  // namespace qres::cli
