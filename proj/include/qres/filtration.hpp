#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qres/encoding.hpp"
#include "qres/pauli.hpp"
#include "qres/simulator.hpp"

namespace qres::filtration {

/// 1/2 sum_j (I - Z_j): its eigenvalue on a computational state is the Hamming weight.
encoding::PauliSum number_operator_pauli(int n_qubits);

/// Smallest ancilla count that represents particle numbers 0..n.
int min_ancillas(int n_qubits);

enum class QpeMode { Analytic, Circuit };

/// Phase-estimation circuit on n system qubits (0..n-1) and n_r ancillas
/// (n..n+n_r-1): Hadamards, controlled U_N^{2^k} from ancilla k as phase
/// 2 pi 2^k / 2^{n_r} on every system qubit, then the inverse QFT.
sim::Circuit qpe_circuit(int n_system, int n_r);

/// Ancilla-word probabilities, index = word with ancilla 0 as least significant
/// bit. Analytic mode adds up |amp|^2 by Hamming weight (U_N is diagonal, so a
/// weight-m component lands on word m mod 2^{n_r}); circuit mode runs qpe_circuit.
std::vector<double> qpe_distribution(const sim::StateVector& state, int n_r, QpeMode mode = QpeMode::Analytic);

/// Counts over ancilla bitstrings (ancilla 0 rightmost).
std::map<std::string, int> qpe_project(const sim::StateVector& state, int n_r, int shots, std::uint64_t seed,
                                       QpeMode mode = QpeMode::Analytic);

struct FiltrationInput {
    Complex e;
    sim::StateVector state;
};

struct FiltrationRow {
    Complex e;
    std::map<std::string, int> counts;
    std::map<std::string, double> percentages;
    bool physical = false;
};

struct FiltrationReport {
    bool applicable = true;
    std::string note;
    int n_r = 3;
    int shots = 0;
    std::vector<FiltrationRow> rows;

    nlohmann::json to_json() const;
};

/// One row per state; physical iff at least `threshold_percent` of the counts
/// land on the weight-1 word. Row k uses seed + k. Gray-code states have no
/// per-qubit occupation, so that encoding yields a not-applicable report.
FiltrationReport filtration_report(std::span<const FiltrationInput> states, int n_r, int shots, std::uint64_t seed,
                                   encoding::Encoding encoding = encoding::Encoding::OneHotJW,
                                   double threshold_percent = 99.0, QpeMode mode = QpeMode::Analytic);

/// E_re,E_im,<one column per ancilla word>,physical
void write_heatmap_csv(std::ostream& os, const FiltrationReport& report);

}  // namespace qres::filtration
