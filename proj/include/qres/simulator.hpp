#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qres/common.hpp"
#include "qres/pauli.hpp"

// Statevector emulation. Qubit 0 is the least significant bit of the basis
// index; printed bitstrings put qubit 0 rightmost.
namespace qres::sim {

class StateVector {
public:
    /// |0...0> on n qubits.
    explicit StateVector(int n_qubits);
    /// Takes amplitudes as given; size must be a power of two.
    static StateVector from_amplitudes(std::vector<Complex> amplitudes);
    static StateVector basis_state(int n_qubits, std::uint64_t index);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amp_.size(); }
    std::span<Complex> amplitudes() { return amp_; }
    std::span<const Complex> amplitudes() const { return amp_; }
    Complex operator[](std::size_t k) const { return amp_[k]; }
    double norm() const;
    CVector to_vector() const;

private:
    StateVector() = default;
    int n_qubits_ = 0;
    std::vector<Complex> amp_;
};

enum class GateKind { RX, RZ, RXX, H, Phase, ControlledPhase, SWAP };

/// RX(t) = exp(-i t X / 2), RZ(t) = exp(-i t Z / 2), RXX(t) = exp(-i t X X / 2),
/// Phase(t) = diag(1, e^{i t}), ControlledPhase(c, t, phi) multiplies |11> by e^{i phi}.
struct Gate {
    GateKind kind;
    int q0 = 0;
    int q1 = -1;
    double angle = 0.0;
};

class Circuit {
public:
    explicit Circuit(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    const std::vector<Gate>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }

    Circuit& rx(int q, double angle);
    Circuit& rz(int q, double angle);
    Circuit& rxx(int q1, int q2, double angle);
    Circuit& h(int q);
    Circuit& phase(int q, double angle);
    Circuit& controlled_phase(int control, int target, double angle);
    Circuit& swap(int q1, int q2);
    Circuit& append(const Gate& g);

private:
    void check_qubit(int q) const;
    int n_qubits_;
    std::vector<Gate> gates_;
};

/// 2x2 or 4x4 unitary of one gate (4x4 index = bit(q0) + 2 bit(q1)).
CMatrix gate_matrix(const Gate& g);

void apply_circuit_inplace(StateVector& state, const Circuit& circuit);
StateVector apply_circuit(StateVector state, const Circuit& circuit);

/// <psi|P|psi> for the bare string (coefficient ignored); real for Hermitian P.
double expectation_pauli(const StateVector& state, const encoding::PauliString& p);

struct ShotOptions {
    int shots = 8192;
    std::uint64_t seed = 0;
};

/// Finite-shot estimates of <P> for each string. Each string is measured in its
/// own rotated basis: the parity count is Binomial(shots, (1 + <P>)/2), drawn by
/// inverse CDF from one uniform per string. A fixed seed therefore reuses the
/// same uniforms for every call, which keeps finite-difference gradients smooth.
std::vector<double> sample_pauli_expectations(const StateVector& state,
                                              std::span<const encoding::PauliString> strings,
                                              const ShotOptions& shots);

/// sum_P c_P <P>; exact without shots, estimated per string with shots.
Complex expectation_sum(const StateVector& state, const encoding::PauliSum& sum,
                        const std::optional<ShotOptions>& shots = std::nullopt);

/// Exact-mode form of a Pauli sum for repeated expectations: strings sharing an
/// X mask are merged into one diagonal d_x[k] = sum_z c_z <k^x|X^x Z^z|k>, so
/// <psi|sum|psi> costs one pass over the state per distinct mask.
class DiagonalGroups {
public:
    explicit DiagonalGroups(const encoding::PauliSum& sum);

    int n_qubits() const { return n_qubits_; }
    std::size_t groups() const { return xs_.size(); }
    Complex expectation(const StateVector& state) const;

private:
    int n_qubits_ = 0;
    std::vector<std::uint64_t> xs_;
    std::vector<std::vector<Complex>> diag_;
};

std::string bitstring(std::uint64_t index, int n_qubits);

/// Multinomial draw from |amp|^2 (conditional binomials, deterministic per seed).
std::map<std::string, int> sample_counts(const StateVector& state, int shots, std::uint64_t seed);
std::map<std::string, int> sample_counts(std::span<const double> probabilities, int n_bits, int shots,
                                         std::uint64_t seed);

nlohmann::json counts_to_json(const std::map<std::string, int>& counts);

}  // namespace qres::sim
