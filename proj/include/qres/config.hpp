#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qres/basis.hpp"
#include "qres/encoding.hpp"
#include "qres/filtration.hpp"
#include "qres/hamiltonian.hpp"
#include "qres/potential.hpp"
#include "qres/trajectory.hpp"
#include "qres/vqa.hpp"

namespace qres::config {

struct ThetaSpec {
    std::vector<double> values;  // explicit list, or expanded from start/stop/step
    trajectory::ThetaGrid grid;
    bool from_grid = false;
};

struct FilterSettings {
    int n_r = 3;
    int shots = 8192;
    std::uint64_t seed = 0;
    double threshold_percent = 99.0;
    filtration::QpeMode mode = filtration::QpeMode::Analytic;
    std::string states_file;
};

/// Fully resolved run configuration. Every section is optional in the file;
/// missing keys take the defaults below, unknown keys are rejected.
struct RunConfig {
    hamiltonian::PotentialModel potential = hamiltonian::PotentialModel::schematic();
    basis::RadialBasisSpec basis;
    ThetaSpec theta;
    hamiltonian::ClassifyOptions classify;
    vqa::VqaConfig vqa;
    trajectory::Engine engine = trajectory::Engine::Classical;
    Complex center;
    double radius = 0.5;
    int bins = 25;
    int attempts = 4;
    FilterSettings filter;
    std::string output_dir = "out";

    void validate() const;
    trajectory::TrajectoryConfig trajectory_config() const;
    nlohmann::json to_json() const;
};

/// Parses and validates; throws InputError naming the offending key.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

}  // namespace qres::config
