#include "qres/config.hpp"

#include <fstream>
#include <set>

namespace qres::config {
namespace {

// Reads keys from one JSON object and rejects whatever it did not consume.
class Section {
public:
    Section(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw InputError("config: '" + path_ + "' must be an object");
    }
    Section(const Section&) = delete;
    Section& operator=(const Section&) = delete;

    bool has(const std::string& key) {
        seen_.insert(key);
        return j_.contains(key) && !j_.at(key).is_null();
    }

    template <typename T>
    void read(const std::string& key, T& out) {
        if (!has(key)) return;
        try {
            out = j_.at(key).get<T>();
        } catch (const nlohmann::json::exception&) {
            throw InputError("config: '" + name(key) + "' has the wrong type");
        }
    }

    void read_complex(const std::string& key, Complex& out) {
        if (!has(key)) return;
        const auto& v = j_.at(key);
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
            throw InputError("config: '" + name(key) + "' must be [re, im]");
        }
        out = {v[0].get<double>(), v[1].get<double>()};
    }

    const nlohmann::json* child(const std::string& key) {
        if (!has(key)) return nullptr;
        return &j_.at(key);
    }

    std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void finish() const {
        for (const auto& [k, v] : j_.items()) {
            if (!seen_.count(k)) throw InputError("config: unknown key '" + name(k) + "'");
        }
    }

private:
    const nlohmann::json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

template <typename E>
E read_enum(Section& s, const std::string& key, E fallback, std::initializer_list<std::pair<const char*, E>> table) {
    std::string text;
    s.read(key, text);
    if (text.empty()) return fallback;
    for (const auto& [name, value] : table) {
        if (text == name) return value;
    }
    std::string allowed;
    for (const auto& [name, value] : table) allowed += std::string(allowed.empty() ? "" : ", ") + name;
    throw InputError("config: '" + s.name(key) + "' = '" + text + "' is not one of: " + allowed);
}

void parse_model(const nlohmann::json& j, RunConfig& cfg) {
    Section s(j, "model");
    const auto kind = read_enum(s, "potential", hamiltonian::PotentialKind::Schematic,
                                {{"schematic", hamiltonian::PotentialKind::Schematic},
                                 {"alpha_alpha", hamiltonian::PotentialKind::AlphaAlpha}});
    cfg.potential = kind == hamiltonian::PotentialKind::Schematic ? hamiltonian::PotentialModel::schematic()
                                                                  : hamiltonian::PotentialModel::alpha_alpha();
    auto& p = cfg.potential;
    s.read("v0", p.v0);
    s.read("k", p.k);
    s.read("beta", p.beta);
    s.read("z1", p.z1);
    s.read("z2", p.z2);
    s.read("e2", p.e2);
    s.read("hbar2_over_2mu", p.hbar2_over_2mu);
    s.finish();
}

void parse_basis(const nlohmann::json& j, RunConfig& cfg) {
    Section s(j, "basis");
    auto& b = cfg.basis;
    b.family = read_enum(s, "family", b.family,
                         {{"gaussian", basis::Family::Gaussian}, {"ho", basis::Family::HarmonicOscillator}});
    s.read("size", b.size);
    s.read("l", b.l);
    s.read("r1", b.r1);
    s.read("r_max", b.r_max);
    s.read("b", b.b);
    s.finish();
}

void parse_theta(const nlohmann::json& j, RunConfig& cfg) {
    Section s(j, "theta");
    auto& t = cfg.theta;
    if (s.has("values")) {
        s.read("values", t.values);
        if (s.has("start") || s.has("stop") || s.has("step")) {
            throw InputError("config: 'theta' takes either 'values' or 'start'/'stop'/'step'");
        }
    } else {
        t.from_grid = true;
        s.read("start", t.grid.start);
        t.grid.stop = t.grid.start;
        s.read("stop", t.grid.stop);
        s.read("step", t.grid.step);
    }
    s.finish();
}

void parse_vqa(const nlohmann::json& j, RunConfig& cfg) {
    Section s(j, "vqa");
    auto& v = cfg.vqa;
    v.encoding = read_enum(s, "encoding", v.encoding,
                           {{"gray", encoding::Encoding::GrayCode}, {"onehot-jw", encoding::Encoding::OneHotJW}});
    s.read("layers", v.layers);
    if (s.has("shots")) {
        int shots = 0;
        s.read("shots", shots);
        v.shots = shots;
    }
    s.read("n_runs", v.n_runs);
    s.read("base_seed", v.base_seed);
    s.read("grad_tol", v.grad_tol);
    s.read("max_iterations", v.max_iterations);
    s.read_complex("initial_e", v.initial_e);
    s.read("scan_step", v.scan_step);
    s.read("repetitions", v.repetitions);
    s.read("init_scale", v.init_scale);
    s.read("analytic_energy", v.analytic_energy);
    s.read("cluster_radius", v.cluster_radius);
    s.read("fd_step_exact", v.fd_step_exact);
    s.read("fd_step_shot", v.fd_step_shot);
    s.read("cost_tol_exact", v.cost_tol_exact);
    s.read("cost_tol_shot_rel", v.cost_tol_shot_rel);
    s.read("origin_tol", v.origin_tol);
    s.finish();
}

void parse_trajectory(const nlohmann::json& j, RunConfig& cfg) {
    Section s(j, "trajectory");
    cfg.engine = read_enum(s, "engine", cfg.engine,
                           {{"classical", trajectory::Engine::Classical}, {"quantum", trajectory::Engine::Quantum}});
    s.read_complex("center", cfg.center);
    s.read("radius", cfg.radius);
    s.read("bins", cfg.bins);
    s.read("attempts", cfg.attempts);
    s.finish();
}

void parse_filter(const nlohmann::json& j, RunConfig& cfg) {
    Section s(j, "filter");
    auto& f = cfg.filter;
    s.read("n_r", f.n_r);
    s.read("shots", f.shots);
    s.read("seed", f.seed);
    s.read("threshold_percent", f.threshold_percent);
    f.mode = read_enum(s, "mode", f.mode,
                       {{"analytic", filtration::QpeMode::Analytic}, {"circuit", filtration::QpeMode::Circuit}});
    s.read("states_file", f.states_file);
    s.finish();
}

void parse_classify(const nlohmann::json& j, RunConfig& cfg) {
    Section s(j, "classify");
    s.read("tol_bound", cfg.classify.tol_bound);
    s.read("tol_continuum_deg", cfg.classify.tol_continuum_deg);
    s.finish();
}

}  // namespace

void RunConfig::validate() const {
    potential.validate();
    basis.validate();
    if (theta.from_grid) {
        theta.grid.validate();
    } else {
        if (theta.values.empty()) throw InputError("config: 'theta.values' is empty");
        for (double t : theta.values) {
            if (!(t >= 0.0 && t < 45.0)) {
                throw InputError("config: theta = " + std::to_string(t) + " deg is outside [0, 45)");
            }
        }
    }
    if (!(classify.tol_bound > 0.0) || !(classify.tol_continuum_deg > 0.0)) {
        throw InputError("config: classify tolerances must be positive");
    }
    vqa.validate();
    if (!(radius > 0.0)) throw InputError("config: 'trajectory.radius' must be positive");
    if (bins < 1) throw InputError("config: 'trajectory.bins' must be >= 1");
    if (attempts < 1) throw InputError("config: 'trajectory.attempts' must be >= 1");
    if (filter.n_r < 1 || filter.n_r > 16) throw InputError("config: 'filter.n_r' must be in [1, 16]");
    if (filter.shots < 1) throw InputError("config: 'filter.shots' must be positive");
    if (output_dir.empty()) throw InputError("config: 'output.dir' must not be empty");
}

trajectory::TrajectoryConfig RunConfig::trajectory_config() const {
    trajectory::TrajectoryConfig t;
    t.basis = basis;
    t.potential = potential;
    if (!theta.from_grid) throw InputError("config: trajectories need 'theta.start/stop/step'");
    t.grid = theta.grid;
    t.center = center;
    t.radius = radius;
    t.bins = bins;
    t.vqa = vqa;
    t.attempts = attempts;
    return t;
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json theta_json;
    if (theta.from_grid) {
        theta_json = {{"start", theta.grid.start}, {"stop", theta.grid.stop}, {"step", theta.grid.step}};
    } else {
        theta_json = {{"values", theta.values}};
    }
    nlohmann::json vqa_json = {{"encoding", encoding::to_string(vqa.encoding)},
                               {"layers", vqa.layers},
                               {"shots", vqa.shots ? nlohmann::json(*vqa.shots) : nlohmann::json(nullptr)},
                               {"n_runs", vqa.n_runs},
                               {"base_seed", vqa.base_seed},
                               {"grad_tol", vqa.grad_tol},
                               {"max_iterations", vqa.max_iterations},
                               {"initial_e", {vqa.initial_e.real(), vqa.initial_e.imag()}},
                               {"scan_step", vqa.scan_step},
                               {"repetitions", vqa.repetitions},
                               {"init_scale", vqa.init_scale},
                               {"analytic_energy", vqa.analytic_energy},
                               {"cluster_radius", vqa.cluster_radius},
                               {"fd_step_exact", vqa.fd_step_exact},
                               {"fd_step_shot", vqa.fd_step_shot},
                               {"cost_tol_exact", vqa.cost_tol_exact},
                               {"cost_tol_shot_rel", vqa.cost_tol_shot_rel},
                               {"origin_tol", vqa.origin_tol}};
    return {{"model",
             {{"potential", potential.kind == hamiltonian::PotentialKind::Schematic ? "schematic" : "alpha_alpha"},
              {"v0", potential.v0},
              {"k", potential.k},
              {"beta", potential.beta},
              {"z1", potential.z1},
              {"z2", potential.z2},
              {"e2", potential.e2},
              {"hbar2_over_2mu", potential.hbar2_over_2mu}}},
            {"basis",
             {{"family", basis.family == basis::Family::Gaussian ? "gaussian" : "ho"},
              {"size", basis.size},
              {"l", basis.l},
              {"r1", basis.r1},
              {"r_max", basis.r_max},
              {"b", basis.b}}},
            {"theta", theta_json},
            {"classify", {{"tol_bound", classify.tol_bound}, {"tol_continuum_deg", classify.tol_continuum_deg}}},
            {"vqa", vqa_json},
            {"trajectory",
             {{"engine", trajectory::to_string(engine)},
              {"center", {center.real(), center.imag()}},
              {"radius", radius},
              {"bins", bins},
              {"attempts", attempts}}},
            {"filter",
             {{"n_r", filter.n_r},
              {"shots", filter.shots},
              {"seed", filter.seed},
              {"threshold_percent", filter.threshold_percent},
              {"mode", filter.mode == filtration::QpeMode::Analytic ? "analytic" : "circuit"},
              {"states_file", filter.states_file}}},
            {"output", {{"dir", output_dir}}}};
}

RunConfig parse_config(const nlohmann::json& j) {
    RunConfig cfg;
    Section root(j, "");
    if (const auto* m = root.child("model")) parse_model(*m, cfg);
    if (const auto* b = root.child("basis")) parse_basis(*b, cfg);
    if (const auto* t = root.child("theta")) parse_theta(*t, cfg);
    else cfg.theta.values = {0.0};
    if (const auto* c = root.child("classify")) parse_classify(*c, cfg);
    if (const auto* v = root.child("vqa")) parse_vqa(*v, cfg);
    if (const auto* t = root.child("trajectory")) parse_trajectory(*t, cfg);
    if (const auto* f = root.child("filter")) parse_filter(*f, cfg);
    if (const auto* o = root.child("output")) {
        Section s(*o, "output");
        s.read("dir", cfg.output_dir);
        s.finish();
    }
    root.finish();
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("config: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("config: '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

}  // namespace qres::config
