#include "qres/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>

#include "qres/encoding.hpp"
#include "qres/filtration.hpp"
#include "qres/hamiltonian.hpp"
#include "qres/simulator.hpp"
#include "qres/trajectory.hpp"
#include "qres/vqa.hpp"

namespace qres::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class Artifacts {
public:
    explicit Artifacts(const config::RunConfig& cfg, std::uint64_t seed)
        : dir_(cfg.output_dir), config_(cfg.to_json()), seed_(seed) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw InputError("cannot create output directory '" + dir_.string() + "': " + ec.message());
    }

    // CSV stream with the reproducibility header already written.
    std::ofstream csv(const std::string& name) {
        auto os = open(name);
        os << "# config: " << config_.dump() << '\n' << "# seed: " << seed_ << '\n';
        return os;
    }

    void write_json(const std::string& name, json body) {
        body["config"] = config_;
        body["seed"] = seed_;
        auto os = open(name);
        os << body.dump(2) << '\n';
    }

    std::ofstream raw(const std::string& name) { return open(name); }

    const std::vector<std::string>& files() const { return files_; }

private:
    std::ofstream open(const std::string& name) {
        const auto path = dir_ / name;
        std::ofstream os(path);
        if (!os) throw InputError("cannot write '" + path.string() + "'");
        os.precision(12);
        files_.push_back(path.string());
        return os;
    }

    fs::path dir_;
    json config_;
    std::uint64_t seed_;
    std::vector<std::string> files_;
};

std::vector<double> theta_values(const config::RunConfig& cfg) {
    return cfg.theta.from_grid ? cfg.theta.grid.values() : cfg.theta.values;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

CommandResult cmd_spectrum_classical(const config::RunConfig& cfg) {
    cfg.validate();
    Artifacts out(cfg, cfg.vqa.base_seed);
    const hamiltonian::ScaledHamiltonianBuilder builder(cfg.basis, cfg.potential);

    auto csv = out.csv("spectrum.csv");
    csv << "theta_deg,l,index,E_real_MeV,E_imag_MeV,label,residual\n";
    json per_theta = json::array();
    for (double theta : theta_values(cfg)) {
        auto spectrum = hamiltonian::solve_spectrum(builder.build(theta));
        spectrum.labels = hamiltonian::classify_spectrum(spectrum, theta, cfg.classify);
        for (std::size_t k = 0; k < spectrum.energies.size(); ++k) {
            csv << theta << ',' << cfg.basis.l << ',' << k << ',' << spectrum.energies[k].real() << ','
                << spectrum.energies[k].imag() << ',' << hamiltonian::to_string(spectrum.labels[k]) << ','
                << spectrum.residuals[k] << '\n';
        }
        json states = json::array();
        for (std::size_t k = 0; k < spectrum.energies.size(); ++k) {
            states.push_back({{"E_re", spectrum.energies[k].real()},
                              {"E_im", spectrum.energies[k].imag()},
                              {"label", hamiltonian::to_string(spectrum.labels[k])},
                              {"residual", spectrum.residuals[k]}});
        }
        per_theta.push_back({{"theta_deg", theta}, {"eigenvalues", states}});
    }
    csv.close();
    json body{{"command", "spectrum-classical"}, {"spectra", per_theta}};
    out.write_json("spectrum.json", body);

    json summary{{"command", "spectrum-classical"}, {"angles", per_theta.size()}, {"size", cfg.basis.size}};
    return {summary, out.files()};
}

CommandResult cmd_spectrum_quantum(const config::RunConfig& cfg) {
    cfg.validate();
    const auto thetas = theta_values(cfg);
    if (thetas.size() != 1) throw InputError("spectrum-quantum needs exactly one theta value");
    const double theta = thetas.front();
    const auto& vc = cfg.vqa;
    Artifacts out(cfg, vc.base_seed);

    const auto h = hamiltonian::build_scaled_matrix(cfg.basis, cfg.potential, theta);
    const auto classical = hamiltonian::solve_spectrum(h);
    const encoding::HermitianizedOperator op(encoding::encode(h.h, vc.encoding));

    std::vector<vqa::EigenpairEstimate> all_runs;
    std::vector<vqa::EigenpairEstimate> found;
    for (int r = 0; r < vc.n_runs; ++r) {
        const std::uint64_t seed = vc.base_seed + static_cast<std::uint64_t>(r) * vc.repetitions;
        std::vector<vqa::EigenpairEstimate> runs;
        auto kept = vqa::scan_spectrum(vc, op, seed, &runs);
        all_runs.insert(all_runs.end(), runs.begin(), runs.end());
        found.insert(found.end(), kept.begin(), kept.end());
    }
    {
        auto log = out.raw("runs.jsonl");
        vqa::write_run_log(log, all_runs);
    }
    if (found.empty()) {
        throw NumericalError("spectrum-quantum: none of " + std::to_string(all_runs.size()) +
                             " minimizations converged (see runs.jsonl)");
    }

    std::vector<Complex> values;
    for (const auto& f : found) values.push_back(f.e);
    const auto clusters = vqa::cluster_estimates(values, vc.cluster_radius, vc.origin_tol);

    // Representative state per cluster: the lowest exact cost among its members.
    std::vector<const vqa::EigenpairEstimate*> best(clusters.size(), nullptr);
    for (const auto& f : found) {
        std::size_t c = 0;
        double dmin = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < clusters.size(); ++k) {
            const double d = std::abs(clusters[k].stats.median - f.e);
            if (d < dmin) dmin = d, c = k;
        }
        if (!best[c] || f.exact_cost < best[c]->exact_cost) best[c] = &f;
    }

    auto nearest_classical = [&](Complex e) {
        std::size_t idx = 0;
        for (std::size_t k = 1; k < classical.energies.size(); ++k) {
            if (std::abs(classical.energies[k] - e) < std::abs(classical.energies[idx] - e)) idx = k;
        }
        return idx;
    };

    std::vector<bool> matched(classical.energies.size(), false);
    json cluster_json = json::array();
    json states_json = json::array();
    auto csv = out.csv("overlay.csv");
    csv << "source,index,E_re_classical,E_im_classical,E_re_quantum,E_im_quantum,mad_re,mad_im,n_found,"
           "distance,origin_artifact\n";
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        const auto& cl = clusters[c];
        const auto idx = nearest_classical(cl.stats.median);
        const Complex ec = classical.energies[idx];
        matched[idx] = true;
        const double dist = std::abs(ec - cl.stats.median);
        csv << "quantum," << idx << ',' << ec.real() << ',' << ec.imag() << ',' << cl.stats.median.real() << ','
            << cl.stats.median.imag() << ',' << cl.stats.mad_re << ',' << cl.stats.mad_im << ',' << cl.stats.n
            << ',' << dist << ',' << (cl.origin_artifact ? 1 : 0) << '\n';
        cluster_json.push_back({{"E_median", complex_json(cl.stats.median)},
                                {"mad_re", cl.stats.mad_re},
                                {"mad_im", cl.stats.mad_im},
                                {"n_found", cl.stats.n},
                                {"nearest_classical", complex_json(ec)},
                                {"distance", dist},
                                {"origin_artifact", cl.origin_artifact}});
        const auto state = vqa::prepare_state(best[c]->params);
        json amps = json::array();
        for (const auto& a : state.amplitudes()) amps.push_back({a.real(), a.imag()});
        states_json.push_back({{"E_re", best[c]->e.real()},
                               {"E_im", best[c]->e.imag()},
                               {"exact_cost", best[c]->exact_cost},
                               {"seed", best[c]->seed},
                               {"origin_artifact", cl.origin_artifact},
                               {"amplitudes", amps}});
    }
    for (std::size_t k = 0; k < classical.energies.size(); ++k) {
        if (matched[k]) continue;
        const Complex ec = classical.energies[k];
        csv << "classical," << k << ',' << ec.real() << ',' << ec.imag() << ",,,,,0,,0\n";
    }
    csv.close();

    const int n_conv = static_cast<int>(found.size());
    out.write_json("clusters.json", {{"command", "spectrum-quantum"},
                                     {"theta_deg", theta},
                                     {"runs", all_runs.size()},
                                     {"converged_scans", n_conv},
                                     {"clusters", cluster_json}});
    out.write_json("states.json", {{"encoding", encoding::to_string(vc.encoding)},
                                   {"n_qubits", op.n_qubits()},
                                   {"theta_deg", theta},
                                   {"states", states_json}});

    json summary{{"command", "spectrum-quantum"},
                 {"runs", all_runs.size()},
                 {"clusters", clusters.size()},
                 {"estimates", cluster_json}};
    return {summary, out.files()};
}

CommandResult cmd_trajectory(const config::RunConfig& cfg) {
    cfg.validate();
    const auto tc = cfg.trajectory_config();
    Artifacts out(cfg, cfg.vqa.base_seed);
    const auto traj = trajectory::run_trajectory(tc, cfg.engine);
    const auto est = trajectory::extract_optimal(traj, cfg.bins);
    const auto speed = trajectory::trajectory_speed(traj);

    {
        auto csv = out.csv("trajectory.csv");
        trajectory::write_trajectory_csv(csv, traj);
    }
    {
        auto csv = out.csv("histogram.csv");
        trajectory::write_histogram_csv(csv, est);
    }
    {
        auto csv = out.csv("speed.csv");
        csv << "theta_deg,speed_MeV_per_deg\n";
        for (const auto& s : speed) csv << s.theta_deg << ',' << s.speed << '\n';
    }
    json body = est.to_json();
    body["command"] = "trajectory";
    body["engine"] = trajectory::to_string(cfg.engine);
    if (!speed.empty()) body["min_speed_theta_deg"] = trajectory::min_speed_theta(speed);
    out.write_json("estimate.json", body);

    json summary{{"command", "trajectory"},
                 {"engine", trajectory::to_string(cfg.engine)},
                 {"E_re", est.e_opt.real()},
                 {"E_im", est.e_opt.imag()},
                 {"accepted", est.n_points},
                 {"angles", traj.points.size()}};
    return {summary, out.files()};
}

CommandResult cmd_filter(const config::RunConfig& cfg) {
    cfg.validate();
    const auto& fs_cfg = cfg.filter;
    if (fs_cfg.states_file.empty()) throw InputError("filter needs 'filter.states_file' or --states");
    std::ifstream in(fs_cfg.states_file);
    if (!in) throw InputError("cannot open states file '" + fs_cfg.states_file + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("states file is not valid JSON: " + std::string(e.what()));
    }

    encoding::Encoding enc;
    std::vector<filtration::FiltrationInput> inputs;
    try {
        const auto name = doc.at("encoding").get<std::string>();
        if (name == "gray") enc = encoding::Encoding::GrayCode;
        else if (name == "onehot-jw") enc = encoding::Encoding::OneHotJW;
        else throw InputError("states file: unknown encoding '" + name + "'");
        for (const auto& s : doc.at("states")) {
            std::vector<Complex> amps;
            for (const auto& a : s.at("amplitudes")) amps.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
            inputs.push_back({{s.at("E_re").get<double>(), s.at("E_im").get<double>()},
                              sim::StateVector::from_amplitudes(std::move(amps))});
        }
    } catch (const json::exception& e) {
        throw InputError("states file: " + std::string(e.what()));
    }

    Artifacts out(cfg, fs_cfg.seed);
    const auto report = filtration::filtration_report(inputs, fs_cfg.n_r, fs_cfg.shots, fs_cfg.seed, enc,
                                                      fs_cfg.threshold_percent, fs_cfg.mode);
    {
        auto csv = out.csv("heatmap.csv");
        filtration::write_heatmap_csv(csv, report);
    }
    json body = report.to_json();
    body["command"] = "filter";
    body["states_file"] = fs_cfg.states_file;
    out.write_json("filter.json", body);

    int physical = 0;
    for (const auto& r : report.rows) physical += r.physical ? 1 : 0;
    json summary{{"command", "filter"},
                 {"applicable", report.applicable},
                 {"states", report.rows.size()},
                 {"physical", physical}};
    return {summary, out.files()};
}

}  // namespace qres::cli
