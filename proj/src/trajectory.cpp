#include "qres/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "qres/encoding.hpp"
#include "qres/hamiltonian.hpp"

namespace qres::trajectory {

const char* to_string(Engine e) { return e == Engine::Classical ? "classical" : "quantum"; }

void ThetaGrid::validate() const {
    if (!(step > 0.0)) throw InputError("theta grid: step must be positive");
    if (!(start >= 0.0) || !(stop >= start)) throw InputError("theta grid: need 0 <= start <= stop");
    if (!(stop < 45.0)) throw InputError("theta grid: angles must stay below 45 degrees");
}

std::vector<double> ThetaGrid::values() const {
    validate();
    std::vector<double> v;
    for (int k = 0;; ++k) {
        const double t = start + k * step;
        if (t > stop + 1e-3 * step) break;
        v.push_back(t);
    }
    return v;
}

void TrajectoryConfig::validate() const {
    basis.validate();
    potential.validate();
    grid.validate();
    if (!(radius > 0.0)) throw InputError("trajectory: neighborhood radius must be positive");
    if (bins < 1) throw InputError("trajectory: bins must be >= 1");
    if (attempts < 1) throw InputError("trajectory: attempts must be >= 1");
    vqa.validate();
}

nlohmann::json TrajectoryConfig::to_json() const {
    return {{"basis",
             {{"family", basis.family == basis::Family::Gaussian ? "gaussian" : "ho"},
              {"size", basis.size},
              {"l", basis.l},
              {"r1", basis.r1},
              {"r_max", basis.r_max},
              {"b", basis.b}}},
            {"theta", {{"start", grid.start}, {"stop", grid.stop}, {"step", grid.step}}},
            {"center", {center.real(), center.imag()}},
            {"radius", radius},
            {"bins", bins},
            {"attempts", attempts}};
}

std::vector<TrajectoryPoint> ThetaTrajectory::accepted() const {
    std::vector<TrajectoryPoint> out;
    std::copy_if(points.begin(), points.end(), std::back_inserter(out), [](const auto& p) { return p.accepted; });
    return out;
}

std::vector<Complex> ThetaTrajectory::accepted_energies() const {
    std::vector<Complex> out;
    for (const auto& p : points) {
        if (p.accepted) out.push_back(p.e);
    }
    return out;
}

namespace {

std::string fmt_e(Complex e) {
    std::ostringstream os;
    os.precision(6);
    os << e.real() << (e.imag() < 0 ? "-" : "+") << std::abs(e.imag()) << "i";
    return os.str();
}

void run_classical(const TrajectoryConfig& cfg, const std::vector<double>& thetas, ThetaTrajectory& traj) {
    const hamiltonian::ScaledHamiltonianBuilder builder(cfg.basis, cfg.potential);
    Complex anchor = cfg.center;
    for (double t : thetas) {
        TrajectoryPoint p{t, {}, false, "", Engine::Classical};
        const auto spec = hamiltonian::solve_spectrum(builder.build(t));
        double best = std::numeric_limits<double>::infinity();
        for (const auto& e : spec.energies) {
            if (std::abs(e - cfg.center) > cfg.radius) continue;
            if (std::abs(e - anchor) < best) {
                best = std::abs(e - anchor);
                p.e = e;
            }
        }
        if (std::isfinite(best)) {
            p.accepted = true;
            anchor = p.e;
        } else {
            p.reason = "no eigenvalue within the neighborhood";
        }
        traj.points.push_back(std::move(p));
    }
}

void run_quantum(const TrajectoryConfig& cfg, const std::vector<double>& thetas, ThetaTrajectory& traj) {
    const hamiltonian::ScaledHamiltonianBuilder builder(cfg.basis, cfg.potential);
    traj.points.assign(thetas.size(), {});
    const int n = static_cast<int>(thetas.size());
    // Build the Pauli operators serially; the optimizations run in parallel.
    std::vector<encoding::HermitianizedOperator> ops;
    ops.reserve(n);
    for (double t : thetas) ops.emplace_back(encoding::encode(builder.build(t).h, cfg.vqa.encoding));
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < n; ++k) {
        TrajectoryPoint p{thetas[k], {}, false, "", Engine::Quantum};
        double best = std::numeric_limits<double>::infinity();
        int converged = 0;
        for (int a = 0; a < cfg.attempts; ++a) {
            const auto seed = cfg.vqa.base_seed + static_cast<std::uint64_t>(k) * cfg.attempts + a;
            const auto est = vqa::minimize_variance(cfg.vqa, ops[k], cfg.center, seed);
            if (!est.converged) continue;
            ++converged;
            if (std::abs(est.e - cfg.center) > cfg.radius) continue;
            if (est.exact_cost < best) {
                best = est.exact_cost;
                p.e = est.e;
            }
        }
        if (std::isfinite(best)) {
            p.accepted = true;
        } else {
            p.reason = converged == 0 ? "no attempt converged" : "converged results outside the neighborhood";
        }
        traj.points[k] = std::move(p);
    }
}

}  // namespace

ThetaTrajectory run_trajectory(const TrajectoryConfig& config, Engine engine) {
    config.validate();
    const auto thetas = config.grid.values();
    ThetaTrajectory traj;
    traj.config = config.to_json();
    traj.config["engine"] = to_string(engine);
    if (engine == Engine::Classical) {
        run_classical(config, thetas, traj);
    } else {
        run_quantum(config, thetas, traj);
    }
    if (traj.accepted().empty()) {
        std::ostringstream msg;
        msg << "run_trajectory: no angle accepted (center " << fmt_e(config.center) << ", radius " << config.radius
            << ")";
        std::map<std::string, int> reasons;
        for (const auto& p : traj.points) ++reasons[p.reason];
        for (const auto& [reason, count] : reasons) msg << "; " << reason << " (" << count << " angles)";
        throw NumericalError(msg.str());
    }
    return traj;
}

Histogram histogram(std::span<const double> values, int bins) {
    if (values.empty()) throw InputError("histogram: no values");
    if (bins < 1) throw InputError("histogram: bins must be >= 1");
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    Histogram h;
    h.lo = *mn;
    h.width = (*mx - *mn) / bins;
    if (!(h.width > 0.0)) {
        h.width = 1e-12 * std::max(1.0, std::abs(*mn));
        h.lo = *mn - 0.5 * bins * h.width;
    }
    h.counts.assign(bins, 0);
    for (double v : values) {
        const int b = std::clamp(static_cast<int>(std::floor((v - h.lo) / h.width)), 0, bins - 1);
        ++h.counts[b];
    }
    const double med = vqa::median(std::vector<double>(values.begin(), values.end()));
    const int top = *std::max_element(h.counts.begin(), h.counts.end());
    double best = std::numeric_limits<double>::infinity();
    for (int b = 0; b < bins; ++b) {
        if (h.counts[b] != top) continue;
        const double d = std::abs(h.center(b) - med);
        if (d < best) {
            best = d;
            h.mode = b;
        }
    }
    return h;
}

ResonanceEstimate extract_optimal(std::span<const Complex> energies, int bins) {
    if (energies.empty()) throw InputError("extract_optimal: trajectory has no points");
    std::vector<double> re;
    std::vector<double> im;
    for (const auto& e : energies) {
        re.push_back(e.real());
        im.push_back(e.imag());
    }
    ResonanceEstimate est;
    est.re = histogram(re, bins);
    est.im = histogram(im, bins);
    est.e_opt = {est.re.center(est.re.mode), est.im.center(est.im.mode)};
    est.bin_width_re = est.re.width;
    est.bin_width_im = est.im.width;
    est.n_points = static_cast<int>(energies.size());
    est.bins = bins;
    return est;
}

ResonanceEstimate extract_optimal(const ThetaTrajectory& traj, int bins) {
    return extract_optimal(traj.accepted_energies(), bins);
}

nlohmann::json ResonanceEstimate::to_json() const {
    return {{"E_re", e_opt.real()}, {"E_im", e_opt.imag()}, {"bin_w_re", bin_width_re},
            {"bin_w_im", bin_width_im}, {"n_points", n_points}, {"bins", bins}};
}

std::vector<SpeedPoint> trajectory_speed(const ThetaTrajectory& traj) {
    const auto pts = traj.accepted();
    if (pts.size() < 2) throw InputError("trajectory_speed: need at least two accepted points");
    std::vector<SpeedPoint> out;
    const auto n = pts.size();
    for (std::size_t k = 0; k < n; ++k) {
        const auto& a = pts[k == 0 ? 0 : k - 1];
        const auto& b = pts[k + 1 == n ? n - 1 : k + 1];
        out.push_back({pts[k].theta_deg, std::abs(b.e - a.e) / (b.theta_deg - a.theta_deg)});
    }
    return out;
}

double min_speed_theta(std::span<const SpeedPoint> speed) {
    if (speed.empty()) throw InputError("min_speed_theta: empty input");
    return std::min_element(speed.begin(), speed.end(), [](const auto& a, const auto& b) { return a.speed < b.speed; })
        ->theta_deg;
}

void write_trajectory_csv(std::ostream& os, const ThetaTrajectory& traj) {
    os << "theta_deg,E_re_MeV,E_im_MeV,accepted,reason\n";
    const auto old = os.precision(12);
    for (const auto& p : traj.points) {
        os << p.theta_deg << ',';
        if (p.accepted) {
            os << p.e.real() << ',' << p.e.imag();
        } else {
            os << ',';
        }
        os << ',' << (p.accepted ? 1 : 0) << ',' << p.reason << '\n';
    }
    os.precision(old);
}

void write_histogram_csv(std::ostream& os, const ResonanceEstimate& est) {
    os << "component,bin,center_MeV,count\n";
    const auto old = os.precision(12);
    for (const auto* h : {&est.re, &est.im}) {
        const char* name = h == &est.re ? "re" : "im";
        for (int b = 0; b < static_cast<int>(h->counts.size()); ++b) {
            os << name << ',' << b << ',' << h->center(b) << ',' << h->counts[b] << '\n';
        }
    }
    os.precision(old);
}

}  // namespace qres::trajectory
