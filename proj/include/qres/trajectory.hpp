#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qres/basis.hpp"
#include "qres/common.hpp"
#include "qres/potential.hpp"
#include "qres/vqa.hpp"

namespace qres::trajectory {

enum class Engine { Classical, Quantum };

const char* to_string(Engine e);

/// start, start + step, ... up to stop (inclusive within step/1000).
struct ThetaGrid {
    double start = 2.0;
    double stop = 44.5;
    double step = 0.5;

    std::vector<double> values() const;
    void validate() const;
};

struct TrajectoryConfig {
    basis::RadialBasisSpec basis;
    hamiltonian::PotentialModel potential = hamiltonian::PotentialModel::schematic();
    ThetaGrid grid;
    Complex center;
    double radius = 0.5;
    int bins = 25;
    /// Quantum engine only: optimizer settings and restarts per angle.
    vqa::VqaConfig vqa;
    int attempts = 4;

    void validate() const;
    nlohmann::json to_json() const;
};

struct TrajectoryPoint {
    double theta_deg = 0.0;
    Complex e;
    bool accepted = false;
    std::string reason;
    Engine source = Engine::Classical;
};

struct ThetaTrajectory {
    /// One entry per grid angle, in grid order, including rejected angles.
    std::vector<TrajectoryPoint> points;
    nlohmann::json config;

    std::vector<TrajectoryPoint> accepted() const;
    std::vector<Complex> accepted_energies() const;
};

/// Classical: eigenvalue nearest the previous accepted point (the center for
/// the first), kept only inside the neighborhood. Quantum: `attempts`
/// minimizations per angle started at the center; the lowest-cost converged
/// result inside the neighborhood is accepted. Throws NumericalError listing
/// per-angle reasons when nothing is accepted.
ThetaTrajectory run_trajectory(const TrajectoryConfig& config, Engine engine);

struct Histogram {
    double lo = 0.0;
    double width = 0.0;
    std::vector<int> counts;
    int mode = 0;

    double center(int bin) const { return lo + (bin + 0.5) * width; }
};

/// Equal-width histogram over [min, max] with the maximal bin as mode; ties go
/// to the bin whose center is nearest the median. Zero spread uses a tiny width.
Histogram histogram(std::span<const double> values, int bins);

struct ResonanceEstimate {
    Complex e_opt;
    double bin_width_re = 0.0;
    double bin_width_im = 0.0;
    Histogram re;
    Histogram im;
    int n_points = 0;
    int bins = 0;

    nlohmann::json to_json() const;
};

ResonanceEstimate extract_optimal(std::span<const Complex> energies, int bins);
ResonanceEstimate extract_optimal(const ThetaTrajectory& traj, int bins);

struct SpeedPoint {
    double theta_deg;
    double speed;  // |dE/dtheta| in MeV per degree
};

/// Central differences over the accepted points (one-sided at the ends).
std::vector<SpeedPoint> trajectory_speed(const ThetaTrajectory& traj);
double min_speed_theta(std::span<const SpeedPoint> speed);

/// theta_deg,E_re_MeV,E_im_MeV,accepted,reason
void write_trajectory_csv(std::ostream& os, const ThetaTrajectory& traj);
/// component,bin,center_MeV,count
void write_histogram_csv(std::ostream& os, const ResonanceEstimate& est);

}  // namespace qres::trajectory
