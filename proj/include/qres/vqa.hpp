#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "json.hpp"
#include "qres/common.hpp"
#include "qres/encoding.hpp"
#include "qres/simulator.hpp"

namespace qres::vqa {

/// Layered Ansatz angles. Layer j holds beta_j (n-1 XX angles), gamma_j (n Z
/// angles), delta_j (n X angles), stored contiguously in that order.
struct AnsatzParams {
    int layers = 1;
    int n_qubits = 1;
    RVector values;

    static int count(int layers, int n_qubits) { return layers * (3 * n_qubits - 1); }
    static AnsatzParams zeros(int layers, int n_qubits);

    double beta(int layer, int k) const { return values[offset(layer) + k]; }
    double gamma(int layer, int k) const { return values[offset(layer) + n_qubits - 1 + k]; }
    double delta(int layer, int k) const { return values[offset(layer) + 2 * n_qubits - 1 + k]; }

    void validate() const;

private:
    int offset(int layer) const { return layer * (3 * n_qubits - 1); }
};

/// U = prod_j exp(-i H_x(delta_j)) exp(-i H_z(gamma_j)) exp(-i H_xx(beta_j)), layers
/// applied 1..P. exp(-i b X_k X_{k+1}) is RXX(k, k+1, 2b); likewise RZ and RX.
sim::Circuit build_ansatz(const AnsatzParams& params);
sim::StateVector prepare_state(const AnsatzParams& params);

/// <H^dag H> - E* <H> - E <H^dag> + |E|^2 with <H^dag> = conj(<H>).
double cost(const AnsatzParams& params, Complex e, const encoding::HermitianizedOperator& op,
            const std::optional<sim::ShotOptions>& shots = std::nullopt);

/// Cost from a prepared state.
double cost(const sim::StateVector& state, Complex e, const encoding::HermitianizedOperator& op,
            const std::optional<sim::ShotOptions>& shots = std::nullopt);

struct VqaConfig {
    encoding::Encoding encoding = encoding::Encoding::GrayCode;
    int layers = 3;
    std::optional<int> shots;
    int n_runs = 1;
    std::uint64_t base_seed = 0;
    double grad_tol = 1e-8;
    int max_iterations = 2000;
    Complex initial_e{-1.0, -0.01};
    double scan_step = 0.4;
    int repetitions = 1;
    double init_scale = 0.1;
    bool analytic_energy = false;
    double cluster_radius = 0.05;
    double fd_step_exact = 1e-6;
    double fd_step_shot = 1e-2;
    double cost_tol_exact = 1e-6;
    double cost_tol_shot_rel = 1e-3;
    double origin_tol = 0.05;

    void validate() const;
};

struct EigenpairEstimate {
    Complex e;
    Complex init_e;
    AnsatzParams params;
    double cost = 0.0;        // value the optimizer saw (shot estimate in shot mode)
    double exact_cost = 0.0;  // exact-mode cost at the returned point
    bool converged = false;
    int iterations = 0;
    int evaluations = 0;
    std::uint64_t seed = 0;
    int multiplicity = 1;
    bool origin_artifact = false;
};

/// Sum of |c_P|, an upper bound on the operator norm.
double pauli_norm_bound(const encoding::PauliSum& h);

/// One run of BFGS over (angles, E_r, E_i) from random angles in
/// [-init_scale, init_scale] drawn from `seed`.
EigenpairEstimate minimize_variance(const VqaConfig& config, const encoding::HermitianizedOperator& op,
                                    Complex init_e, std::uint64_t seed);

/// Repeats minimize_variance with E_r stepped by scan_step from initial_e;
/// repetition r uses seed + r. Converged results are clustered within
/// cluster_radius; each survivor carries its multiplicity.
std::vector<EigenpairEstimate> scan_spectrum(const VqaConfig& config, const encoding::HermitianizedOperator& op,
                                             std::uint64_t seed, std::vector<EigenpairEstimate>* all_runs = nullptr);

struct RunStatistics {
    Complex median;
    double mad_re = 0.0;
    double mad_im = 0.0;
    int n = 0;
};

double median(std::vector<double> values);
/// Component-wise median and median absolute deviation.
RunStatistics aggregate_runs(std::span<const Complex> values);

struct Cluster {
    RunStatistics stats;
    std::vector<Complex> members;
    bool origin_artifact = false;
};

/// Greedy clustering in order of input; a point joins the first cluster whose
/// running median lies within radius.
std::vector<Cluster> cluster_estimates(std::span<const Complex> values, double radius, double origin_tol);

nlohmann::json run_log_entry(const EigenpairEstimate& e);
void write_run_log(std::ostream& os, std::span<const EigenpairEstimate> runs);

}  // namespace qres::vqa
