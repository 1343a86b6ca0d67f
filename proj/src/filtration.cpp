#include "qres/filtration.hpp"

#include <bit>
#include <cmath>

namespace qres::filtration {

encoding::PauliSum number_operator_pauli(int n_qubits) {
    if (n_qubits < 1) throw InputError("number_operator_pauli: need at least one qubit");
    std::vector<encoding::PauliString> terms{{0.5 * n_qubits, 0, 0}};
    for (int j = 0; j < n_qubits; ++j) terms.push_back({-0.5, 0, std::uint64_t{1} << j});
    return encoding::PauliSum(n_qubits, std::move(terms));
}

int min_ancillas(int n_qubits) { return std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(n_qubits)))); }

namespace {

void check_ancillas(int n_system, int n_r) {
    if (n_r < min_ancillas(n_system)) {
        throw InputError("qpe: " + std::to_string(n_r) + " ancillas cannot represent particle numbers up to " +
                         std::to_string(n_system) + " (need " + std::to_string(min_ancillas(n_system)) + ")");
    }
}

}  // namespace

sim::Circuit qpe_circuit(int n_system, int n_r) {
    check_ancillas(n_system, n_r);
    sim::Circuit c(n_system + n_r);
    const double full = 2.0 * kPi / std::ldexp(1.0, n_r);
    for (int k = 0; k < n_r; ++k) c.h(n_system + k);
    for (int k = 0; k < n_r; ++k) {
        const double phi = full * std::ldexp(1.0, k);
        for (int j = 0; j < n_system; ++j) c.controlled_phase(n_system + k, j, phi);
    }
    // Inverse QFT on the ancillas, ancilla 0 least significant.
    for (int k = 0; k < n_r / 2; ++k) c.swap(n_system + k, n_system + n_r - 1 - k);
    for (int j = 0; j < n_r; ++j) {
        for (int m = 0; m < j; ++m) c.controlled_phase(n_system + m, n_system + j, -kPi / std::ldexp(1.0, j - m));
        c.h(n_system + j);
    }
    return c;
}

std::vector<double> qpe_distribution(const sim::StateVector& state, int n_r, QpeMode mode) {
    const int n = state.n_qubits();
    check_ancillas(n, n_r);
    const std::size_t words = std::size_t{1} << n_r;
    std::vector<double> p(words, 0.0);
    if (mode == QpeMode::Analytic) {
        for (std::size_t k = 0; k < state.dim(); ++k) p[std::popcount(k) % words] += std::norm(state[k]);
        return p;
    }
    std::vector<Complex> amp(state.dim() * words, Complex(0.0));
    std::copy(state.amplitudes().begin(), state.amplitudes().end(), amp.begin());
    auto full = sim::StateVector::from_amplitudes(std::move(amp));
    sim::apply_circuit_inplace(full, qpe_circuit(n, n_r));
    for (std::size_t k = 0; k < full.dim(); ++k) p[k >> n] += std::norm(full[k]);
    return p;
}

std::map<std::string, int> qpe_project(const sim::StateVector& state, int n_r, int shots, std::uint64_t seed,
                                       QpeMode mode) {
    const auto p = qpe_distribution(state, n_r, mode);
    return sim::sample_counts(p, n_r, shots, seed);
}

FiltrationReport filtration_report(std::span<const FiltrationInput> states, int n_r, int shots, std::uint64_t seed,
                                   encoding::Encoding encoding, double threshold_percent, QpeMode mode) {
    FiltrationReport report;
    report.n_r = n_r;
    report.shots = shots;
    if (encoding == encoding::Encoding::GrayCode) {
        report.applicable = false;
        report.note = "not applicable: Gray-code qubits carry no per-state occupation";
        return report;
    }
    if (shots <= 0) throw InputError("filtration_report: shots must be positive");
    const std::string physical_word = sim::bitstring(1, n_r);
    for (std::size_t k = 0; k < states.size(); ++k) {
        FiltrationRow row;
        row.e = states[k].e;
        row.counts = qpe_project(states[k].state, n_r, shots, seed + k, mode);
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << n_r); ++w) {
            const auto key = sim::bitstring(w, n_r);
            const auto it = row.counts.find(key);
            row.percentages[key] = 100.0 * (it == row.counts.end() ? 0 : it->second) / shots;
        }
        row.physical = row.percentages[physical_word] >= threshold_percent;
        report.rows.push_back(std::move(row));
    }
    return report;
}

nlohmann::json FiltrationReport::to_json() const {
    nlohmann::json rows_json = nlohmann::json::array();
    for (const auto& r : rows) {
        rows_json.push_back({{"E_re", r.e.real()},
                             {"E_im", r.e.imag()},
                             {"counts", sim::counts_to_json(r.counts)},
                             {"percentages", r.percentages},
                             {"physical", r.physical}});
    }
    return {{"applicable", applicable}, {"note", note}, {"n_r", n_r}, {"shots", shots}, {"rows", rows_json}};
}

void write_heatmap_csv(std::ostream& os, const FiltrationReport& report) {
    os << "E_re,E_im";
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << report.n_r); ++w) os << ',' << sim::bitstring(w, report.n_r);
    os << ",physical\n";
    const auto old = os.precision(10);
    for (const auto& r : report.rows) {
        os << r.e.real() << ',' << r.e.imag();
        for (const auto& [word, pct] : r.percentages) os << ',' << pct;
        os << ',' << (r.physical ? 1 : 0) << '\n';
    }
    os.precision(old);
}

}  // namespace qres::filtration
