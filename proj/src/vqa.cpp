#include "qres/vqa.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qres/bfgs.hpp"

namespace qres::vqa {
namespace {

// Exact-mode cost with both brackets compiled to diagonal groups once per
// operator; large registers fall back to per-string sums.
class ExactCost {
public:
    explicit ExactCost(const encoding::HermitianizedOperator& op) : op_(op) {
        if (op.n_qubits() <= 16) {
            quad_.emplace(op.hdag_h());
            lin_.emplace(op.h());
        }
    }

    Complex linear(const sim::StateVector& s) const {
        return lin_ ? lin_->expectation(s) : sim::expectation_sum(s, op_.h());
    }

    double operator()(const sim::StateVector& s, Complex e) const {
        const double quad = quad_ ? quad_->expectation(s).real() : sim::expectation_sum(s, op_.hdag_h()).real();
        return quad - 2.0 * (std::conj(e) * linear(s)).real() + std::norm(e);
    }

private:
    const encoding::HermitianizedOperator& op_;
    std::optional<sim::DiagonalGroups> quad_;
    std::optional<sim::DiagonalGroups> lin_;
};

}  // namespace

AnsatzParams AnsatzParams::zeros(int layers, int n_qubits) {
    AnsatzParams p{layers, n_qubits, RVector::Zero(count(layers, n_qubits))};
    p.validate();
    return p;
}

void AnsatzParams::validate() const {
    if (layers < 1) throw InputError("AnsatzParams: need at least one layer");
    if (n_qubits < 1) throw InputError("AnsatzParams: need at least one qubit");
    if (values.size() != count(layers, n_qubits)) {
        throw InputError("AnsatzParams: expected " + std::to_string(count(layers, n_qubits)) + " angles, got " +
                         std::to_string(values.size()));
    }
}

sim::Circuit build_ansatz(const AnsatzParams& params) {
    params.validate();
    const int n = params.n_qubits;
    sim::Circuit c(n);
    for (int j = 0; j < params.layers; ++j) {
        for (int k = 0; k + 1 < n; ++k) c.rxx(k, k + 1, 2.0 * params.beta(j, k));
        for (int k = 0; k < n; ++k) c.rz(k, 2.0 * params.gamma(j, k));
        for (int k = 0; k < n; ++k) c.rx(k, 2.0 * params.delta(j, k));
    }
    return c;
}

sim::StateVector prepare_state(const AnsatzParams& params) {
    return sim::apply_circuit(sim::StateVector(params.n_qubits), build_ansatz(params));
}

double cost(const sim::StateVector& state, Complex e, const encoding::HermitianizedOperator& op,
            const std::optional<sim::ShotOptions>& shots) {
    if (state.n_qubits() != op.n_qubits()) {
        throw InputError("cost: Ansatz register has " + std::to_string(state.n_qubits()) +
                         " qubits, Hamiltonian has " + std::to_string(op.n_qubits()));
    }
    Complex quad;
    Complex lin;
    if (!shots) {
        quad = sim::expectation_sum(state, op.hdag_h());
        lin = sim::expectation_sum(state, op.h());
    } else {
        const auto& a = op.hdag_h().terms();
        const auto& b = op.h().terms();
        std::vector<encoding::PauliString> strings(a.begin(), a.end());
        strings.insert(strings.end(), b.begin(), b.end());
        const auto est = sim::sample_pauli_expectations(state, strings, *shots);
        for (std::size_t i = 0; i < a.size(); ++i) quad += a[i].coeff * est[i];
        for (std::size_t i = 0; i < b.size(); ++i) lin += b[i].coeff * est[a.size() + i];
    }
    return quad.real() - 2.0 * (std::conj(e) * lin).real() + std::norm(e);
}

double cost(const AnsatzParams& params, Complex e, const encoding::HermitianizedOperator& op,
            const std::optional<sim::ShotOptions>& shots) {
    return cost(prepare_state(params), e, op, shots);
}

void VqaConfig::validate() const {
    if (layers < 1) throw InputError("vqa: layers must be >= 1");
    if (shots && *shots <= 0) throw InputError("vqa: shots must be positive");
    if (n_runs < 1) throw InputError("vqa: n_runs must be >= 1");
    if (repetitions < 1) throw InputError("vqa: repetitions must be >= 1");
    if (!(grad_tol > 0.0)) throw InputError("vqa: grad_tol must be positive");
    if (max_iterations < 1) throw InputError("vqa: max_iterations must be >= 1");
    if (!(init_scale >= 0.0)) throw InputError("vqa: init_scale must be non-negative");
    if (!(cluster_radius > 0.0)) throw InputError("vqa: cluster_radius must be positive");
    if (!(fd_step_exact > 0.0) || !(fd_step_shot > 0.0)) throw InputError("vqa: finite-difference steps must be positive");
    if (!(cost_tol_exact > 0.0) || !(cost_tol_shot_rel > 0.0)) throw InputError("vqa: cost tolerances must be positive");
}

double pauli_norm_bound(const encoding::PauliSum& h) {
    double s = 0.0;
    for (const auto& t : h.terms()) s += std::abs(t.coeff);
    return s;
}

EigenpairEstimate minimize_variance(const VqaConfig& config, const encoding::HermitianizedOperator& op,
                                    Complex init_e, std::uint64_t seed) {
    config.validate();
    const int n = op.n_qubits();
    const int np = AnsatzParams::count(config.layers, n);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> init(-config.init_scale, config.init_scale);

    const bool analytic = config.analytic_energy;
    RVector x(analytic ? np : np + 2);
    for (int i = 0; i < np; ++i) x[i] = init(rng);
    if (!analytic) {
        x[np] = init_e.real();
        x[np + 1] = init_e.imag();
    }
    std::optional<sim::ShotOptions> shots;
    if (config.shots) shots = sim::ShotOptions{*config.shots, rng()};
    const ExactCost exact(op);

    auto unpack = [&](const RVector& v) {
        AnsatzParams p{config.layers, n, v.head(np)};
        return p;
    };
    // With analytic_energy the objective is min_E cost = <H^dag H> - |<H>|^2 at E = <H>.
    auto energy_of = [&](const sim::StateVector& s, const RVector& v) -> Complex {
        if (!analytic) return {v[np], v[np + 1]};
        return shots ? sim::expectation_sum(s, op.h(), shots) : exact.linear(s);
    };
    opt::Objective f = [&](const RVector& v) {
        const auto state = prepare_state(unpack(v));
        const Complex e = energy_of(state, v);
        return shots ? cost(state, e, op, shots) : exact(state, e);
    };
    const double step = shots ? config.fd_step_shot : config.fd_step_exact;
    const auto scheme = shots ? opt::Difference::Forward : opt::Difference::Central;
    opt::GradientFn g = [&](const RVector& v, double fv, RVector& out) {
        opt::finite_difference_gradient(f, v, fv, step, scheme, out);
    };

    const double tol = shots ? config.cost_tol_shot_rel * std::pow(pauli_norm_bound(op.h()), 2) : config.cost_tol_exact;
    opt::BfgsOptions bo;
    bo.grad_tol = config.grad_tol;
    bo.max_iterations = config.max_iterations;
    bo.f_target = shots ? -std::numeric_limits<double>::infinity() : 1e-6 * tol;
    const auto res = opt::minimize_bfgs(f, g, x, bo);

    EigenpairEstimate out;
    out.params = unpack(res.x);
    const auto state = prepare_state(out.params);
    out.e = energy_of(state, res.x);
    out.init_e = init_e;
    out.cost = res.f;
    out.exact_cost = exact(state, out.e);
    out.converged = out.exact_cost < tol;
    out.iterations = res.iterations;
    out.evaluations = res.evaluations;
    out.seed = seed;
    out.origin_artifact = std::abs(out.e) < config.origin_tol;
    return out;
}

std::vector<EigenpairEstimate> scan_spectrum(const VqaConfig& config, const encoding::HermitianizedOperator& op,
                                             std::uint64_t seed, std::vector<EigenpairEstimate>* all_runs) {
    config.validate();
    const int reps = config.repetitions;
    std::vector<EigenpairEstimate> runs(reps);
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < reps; ++r) {
        const Complex init = config.initial_e + Complex(r * config.scan_step, 0.0);
        runs[r] = minimize_variance(config, op, init, seed + static_cast<std::uint64_t>(r));
    }
    if (all_runs) *all_runs = runs;

    std::vector<EigenpairEstimate> kept;
    for (const auto& run : runs) {
        if (!run.converged) continue;
        auto it = std::find_if(kept.begin(), kept.end(),
                               [&](const EigenpairEstimate& k) { return std::abs(k.e - run.e) < config.cluster_radius; });
        if (it == kept.end()) {
            kept.push_back(run);
            kept.back().multiplicity = 1;
            continue;
        }
        const int m = it->multiplicity + 1;
        if (run.exact_cost < it->exact_cost) *it = run;
        it->multiplicity = m;
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.e.real() < b.e.real(); });
    return kept;
}

double median(std::vector<double> v) {
    if (v.empty()) throw InputError("median: empty input");
    const auto mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    const double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    return 0.5 * (hi + *std::max_element(v.begin(), v.begin() + mid));
}

RunStatistics aggregate_runs(std::span<const Complex> values) {
    if (values.empty()) throw InputError("aggregate_runs: empty cluster");
    std::vector<double> re;
    std::vector<double> im;
    for (const auto& v : values) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    RunStatistics s;
    s.median = {median(re), median(im)};
    for (auto& x : re) x = std::abs(x - s.median.real());
    for (auto& x : im) x = std::abs(x - s.median.imag());
    s.mad_re = median(re);
    s.mad_im = median(im);
    s.n = static_cast<int>(values.size());
    return s;
}

std::vector<Cluster> cluster_estimates(std::span<const Complex> values, double radius, double origin_tol) {
    std::vector<Cluster> clusters;
    for (const auto& v : values) {
        auto it = std::find_if(clusters.begin(), clusters.end(),
                               [&](const Cluster& c) { return std::abs(c.stats.median - v) < radius; });
        if (it == clusters.end()) {
            clusters.push_back({});
            it = clusters.end() - 1;
        }
        it->members.push_back(v);
        it->stats = aggregate_runs(it->members);
    }
    for (auto& c : clusters) c.origin_artifact = std::abs(c.stats.median) < origin_tol;
    std::sort(clusters.begin(), clusters.end(),
              [](const Cluster& a, const Cluster& b) { return a.stats.median.real() < b.stats.median.real(); });
    return clusters;
}

nlohmann::json run_log_entry(const EigenpairEstimate& e) {
    return {{"seed", e.seed},
            {"init_E", {e.init_e.real(), e.init_e.imag()}},
            {"final_E_re", e.e.real()},
            {"final_E_im", e.e.imag()},
            {"cost", e.cost},
            {"exact_cost", e.exact_cost},
            {"iterations", e.iterations},
            {"converged", e.converged}};
}

void write_run_log(std::ostream& os, std::span<const EigenpairEstimate> runs) {
    for (const auto& r : runs) os << run_log_entry(r).dump() << '\n';
}

}  // namespace qres::vqa
