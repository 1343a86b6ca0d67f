#include "qres/simulator.hpp"

#include <bit>
#include <cmath>
#include <random>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/normal.hpp>

#include "qres/kernels.hpp"

namespace qres::sim {
namespace {

using kernels::Mat2;
using kernels::Mat4;

bool use_parallel(std::size_t dim) { return dim >= kernels::kParallelThreshold; }

Mat2 mat2(const Gate& g) {
    const double c = std::cos(0.5 * g.angle);
    const double s = std::sin(0.5 * g.angle);
    switch (g.kind) {
        case GateKind::RX: return {Complex(c, 0), Complex(0, -s), Complex(0, -s), Complex(c, 0)};
        case GateKind::RZ: return {std::polar(1.0, -0.5 * g.angle), 0.0, 0.0, std::polar(1.0, 0.5 * g.angle)};
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            return {r, r, r, -r};
        }
        case GateKind::Phase: return {1.0, 0.0, 0.0, std::polar(1.0, g.angle)};
        default: break;
    }
    throw InputError("simulator: not a single-qubit gate");
}

Mat4 mat4(const Gate& g) {
    Mat4 m{};
    if (g.kind == GateKind::RXX) {
        const double c = std::cos(0.5 * g.angle);
        const Complex s(0, -std::sin(0.5 * g.angle));
        for (int d = 0; d < 4; ++d) m[5 * d] = c;
        m[0 * 4 + 3] = m[3 * 4 + 0] = s;
        m[1 * 4 + 2] = m[2 * 4 + 1] = s;
        return m;
    }
    if (g.kind == GateKind::SWAP) {
        m[0] = m[15] = 1.0;
        m[1 * 4 + 2] = m[2 * 4 + 1] = 1.0;
        return m;
    }
    throw InputError("simulator: not a two-qubit matrix gate");
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > 30) throw InputError("StateVector: qubit count must be in [1, 30]");
    amp_.assign(std::size_t{1} << n_qubits, Complex(0.0));
    amp_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
    const auto dim = amplitudes.size();
    if (dim < 2 || !std::has_single_bit(dim)) throw InputError("StateVector: size must be a power of two >= 2");
    StateVector s;
    s.n_qubits_ = std::countr_zero(dim);
    s.amp_ = std::move(amplitudes);
    return s;
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    if (index >= s.dim()) throw InputError("StateVector: basis index out of range");
    s.amp_[0] = 0.0;
    s.amp_[index] = 1.0;
    return s;
}

double StateVector::norm() const {
    double acc = 0.0;
    for (const auto& a : amp_) acc += std::norm(a);
    return std::sqrt(acc);
}

CVector StateVector::to_vector() const { return Eigen::Map<const CVector>(amp_.data(), amp_.size()); }

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1) throw InputError("Circuit: need at least one qubit");
}

void Circuit::check_qubit(int q) const {
    if (q < 0 || q >= n_qubits_) {
        throw InputError("Circuit: qubit index " + std::to_string(q) + " out of range for " +
                         std::to_string(n_qubits_) + " qubits");
    }
}

Circuit& Circuit::append(const Gate& g) {
    check_qubit(g.q0);
    const bool two = g.kind == GateKind::RXX || g.kind == GateKind::ControlledPhase || g.kind == GateKind::SWAP;
    if (two) {
        check_qubit(g.q1);
        if (g.q0 == g.q1) throw InputError("Circuit: two-qubit gate on a single qubit");
    }
    if (!std::isfinite(g.angle)) throw InputError("Circuit: non-finite gate angle");
    gates_.push_back(g);
    return *this;
}

Circuit& Circuit::rx(int q, double angle) { return append({GateKind::RX, q, -1, angle}); }
Circuit& Circuit::rz(int q, double angle) { return append({GateKind::RZ, q, -1, angle}); }
Circuit& Circuit::rxx(int q1, int q2, double angle) { return append({GateKind::RXX, q1, q2, angle}); }
Circuit& Circuit::h(int q) { return append({GateKind::H, q, -1, 0.0}); }
Circuit& Circuit::phase(int q, double angle) { return append({GateKind::Phase, q, -1, angle}); }
Circuit& Circuit::controlled_phase(int c, int t, double angle) {
    return append({GateKind::ControlledPhase, c, t, angle});
}
Circuit& Circuit::swap(int q1, int q2) { return append({GateKind::SWAP, q1, q2, 0.0}); }

CMatrix gate_matrix(const Gate& g) {
    switch (g.kind) {
        case GateKind::RX:
        case GateKind::RZ:
        case GateKind::H:
        case GateKind::Phase: {
            const Mat2 m = mat2(g);
            CMatrix out(2, 2);
            out << m[0], m[1], m[2], m[3];
            return out;
        }
        case GateKind::ControlledPhase: {
            CMatrix out = CMatrix::Identity(4, 4);
            out(3, 3) = std::polar(1.0, g.angle);
            return out;
        }
        default: {
            const Mat4 m = mat4(g);
            CMatrix out(4, 4);
            for (int r = 0; r < 4; ++r) {
                for (int c = 0; c < 4; ++c) out(r, c) = m[4 * r + c];
            }
            return out;
        }
    }
}

void apply_circuit_inplace(StateVector& state, const Circuit& circuit) {
    if (circuit.n_qubits() != state.n_qubits()) {
        throw InputError("apply_circuit: circuit has " + std::to_string(circuit.n_qubits()) + " qubits, state has " +
                         std::to_string(state.n_qubits()));
    }
    auto amp = state.amplitudes();
    const bool par = use_parallel(amp.size());
    for (const auto& g : circuit.gates()) {
        switch (g.kind) {
            case GateKind::RX:
            case GateKind::RZ:
            case GateKind::H:
            case GateKind::Phase:
                par ? kernels::parallel::apply_1q(amp, g.q0, mat2(g)) : kernels::serial::apply_1q(amp, g.q0, mat2(g));
                break;
            case GateKind::ControlledPhase:
                par ? kernels::parallel::apply_controlled_phase(amp, g.q0, g.q1, g.angle)
                    : kernels::serial::apply_controlled_phase(amp, g.q0, g.q1, g.angle);
                break;
            case GateKind::RXX:
            case GateKind::SWAP:
                par ? kernels::parallel::apply_2q(amp, g.q0, g.q1, mat4(g))
                    : kernels::serial::apply_2q(amp, g.q0, g.q1, mat4(g));
                break;
        }
    }
}

StateVector apply_circuit(StateVector state, const Circuit& circuit) {
    apply_circuit_inplace(state, circuit);
    return state;
}

double expectation_pauli(const StateVector& state, const encoding::PauliString& p) {
    const auto amp = state.amplitudes();
    const Complex v = use_parallel(amp.size()) ? kernels::parallel::pauli_expectation(amp, p.x, p.z)
                                               : kernels::serial::pauli_expectation(amp, p.x, p.z);
    return v.real();
}

namespace {

// Smallest k with CDF(k) >= u: one incomplete-beta CDF near the normal
// approximation, then a pmf walk.
int binomial_quantile(int n, double p, double u) {
    const boost::math::binomial_distribution<double> dist(n, p);
    const double mean = n * p;
    const double sd = std::sqrt(mean * (1.0 - p));
    const double z = boost::math::quantile(boost::math::normal_distribution<double>(), std::clamp(u, 1e-300, 1.0 - 1e-16));
    int k = static_cast<int>(std::clamp(std::floor(mean + sd * z), 0.0, static_cast<double>(n)));
    double c = boost::math::cdf(dist, k);
    double pk = boost::math::pdf(dist, k);
    const double ratio = p / (1.0 - p);
    if (c >= u) {
        while (k > 0 && c - pk >= u) {
            c -= pk;
            pk *= k / ((n - k + 1) * ratio);
            --k;
        }
    } else {
        while (k < n && c < u) {
            ++k;
            pk *= (n - k + 1) * ratio / k;
            c += pk;
        }
    }
    return k;
}

}  // namespace

std::vector<double> sample_pauli_expectations(const StateVector& state,
                                              std::span<const encoding::PauliString> strings,
                                              const ShotOptions& shots) {
    if (shots.shots <= 0) throw InputError("expectation_sum: shots must be positive");
    std::mt19937_64 rng(shots.seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<double> out;
    out.reserve(strings.size());
    const double n = shots.shots;
    for (const auto& p : strings) {
        const double u = uniform(rng);
        if (p.is_identity()) {
            out.push_back(1.0);
            continue;
        }
        const double plus = std::clamp(0.5 * (1.0 + expectation_pauli(state, p)), 0.0, 1.0);
        double k;
        if (plus <= 0.0) {
            k = 0.0;
        } else if (plus >= 1.0) {
            k = n;
        } else {
            k = binomial_quantile(shots.shots, plus, u);
        }
        out.push_back((2.0 * k - n) / n);
    }
    return out;
}

Complex expectation_sum(const StateVector& state, const encoding::PauliSum& sum,
                        const std::optional<ShotOptions>& shots) {
    if (sum.n_qubits() != state.n_qubits()) throw InputError("expectation_sum: register size mismatch");
    const auto& terms = sum.terms();
    Complex acc = 0.0;
    if (!shots) {
        for (const auto& t : terms) acc += t.coeff * expectation_pauli(state, t);
        return acc;
    }
    const auto est = sample_pauli_expectations(state, terms, *shots);
    for (std::size_t i = 0; i < terms.size(); ++i) acc += terms[i].coeff * est[i];
    return acc;
}

DiagonalGroups::DiagonalGroups(const encoding::PauliSum& sum) : n_qubits_(sum.n_qubits()) {
    if (n_qubits_ < 1 || n_qubits_ > 24) throw InputError("DiagonalGroups: register must have 1..24 qubits");
    const std::size_t dim = std::size_t{1} << n_qubits_;
    // Terms are sorted by (x, z), so equal masks are contiguous.
    for (const auto& t : sum.terms()) {
        if (xs_.empty() || xs_.back() != t.x) {
            xs_.push_back(t.x);
            diag_.emplace_back(dim, Complex(0.0));
        }
        auto& d = diag_.back();
        for (std::size_t k = 0; k < dim; ++k) d[k] += t.coeff * kernels::pauli_phase(t.x, t.z, k);
    }
}

Complex DiagonalGroups::expectation(const StateVector& state) const {
    if (state.n_qubits() != n_qubits_) throw InputError("DiagonalGroups: register size mismatch");
    const auto amp = state.amplitudes();
    Complex acc = 0.0;
    for (std::size_t g = 0; g < xs_.size(); ++g) {
        const auto x = xs_[g];
        const auto& d = diag_[g];
        Complex s = 0.0;
        for (std::size_t k = 0; k < amp.size(); ++k) s += std::conj(amp[k ^ x]) * d[k] * amp[k];
        acc += s;
    }
    return acc;
}

std::string bitstring(std::uint64_t index, int n_qubits) {
    std::string s(n_qubits, '0');
    for (int q = 0; q < n_qubits; ++q) {
        if ((index >> q) & 1U) s[n_qubits - 1 - q] = '1';
    }
    return s;
}

std::map<std::string, int> sample_counts(std::span<const double> probabilities, int n_bits, int shots,
                                         std::uint64_t seed) {
    if (shots <= 0) throw InputError("sample_counts: shots must be positive");
    std::mt19937_64 rng(seed);
    std::map<std::string, int> counts;
    double remaining_mass = 0.0;
    for (double p : probabilities) remaining_mass += std::max(p, 0.0);
    int remaining = shots;
    for (std::size_t k = 0; k < probabilities.size() && remaining > 0; ++k) {
        const double p = std::max(probabilities[k], 0.0);
        int c;
        if (k + 1 == probabilities.size() || p >= remaining_mass) {
            c = remaining;
        } else {
            std::binomial_distribution<int> dist(remaining, std::clamp(p / remaining_mass, 0.0, 1.0));
            c = dist(rng);
        }
        remaining_mass -= p;
        remaining -= c;
        if (c > 0) counts[bitstring(k, n_bits)] = c;
    }
    return counts;
}

std::map<std::string, int> sample_counts(const StateVector& state, int shots, std::uint64_t seed) {
    std::vector<double> probs(state.dim());
    for (std::size_t k = 0; k < state.dim(); ++k) probs[k] = std::norm(state[k]);
    return sample_counts(probs, state.n_qubits(), shots, seed);
}

nlohmann::json counts_to_json(const std::map<std::string, int>& counts) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : counts) j[k] = v;
    return j;
}

}  // namespace qres::sim
