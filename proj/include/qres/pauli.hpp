#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qres/common.hpp"

namespace qres::encoding {

/// coeff * i^{|x&z|} X^x Z^z: bit q of (x, z) selects I (0,0), X (1,0), Z (0,1), Y (1,1).
struct PauliString {
    Complex coeff{1.0, 0.0};
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    bool is_identity() const { return (x | z) == 0; }
};

/// Letters with qubit 0 rightmost, e.g. "IXZ" acts with Z on qubit 0.
std::string letters(const PauliString& p, int n_qubits);
PauliString from_letters(std::string_view letters, Complex coeff = 1.0);

/// Sum of Pauli strings on a fixed register. Terms are kept sorted by (x, z),
/// merged, and dropped once |coeff| < kDropThreshold.
class PauliSum {
public:
    static constexpr double kDropThreshold = 1e-14;

    PauliSum() = default;
    explicit PauliSum(int n_qubits);
    PauliSum(int n_qubits, std::vector<PauliString> terms);

    static PauliSum identity(int n_qubits, Complex coeff = 1.0);

    int n_qubits() const { return n_qubits_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const std::vector<PauliString>& terms() const { return terms_; }

    /// Coefficient of the string (x, z), zero when absent.
    Complex coeff(std::uint64_t x, std::uint64_t z) const;

    PauliSum dagger() const;
    PauliSum scaled(Complex s) const;
    CMatrix to_dense() const;
    double max_abs_coeff() const;

    PauliSum& operator+=(const PauliSum& other);
    friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
    friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a += b.scaled(-1.0); }

private:
    void normalize();

    int n_qubits_ = 0;
    std::vector<PauliString> terms_;
};

/// Product of two strings, phase included.
PauliString multiply(const PauliString& a, const PauliString& b);

/// c_P = Tr(P M) / 2^n for every string; rows/cols must be a power of two.
PauliSum pauli_decompose(const CMatrix& m);

PauliSum pauli_multiply(const PauliSum& a, const PauliSum& b);

/// [{"coeff_re":..,"coeff_im":..,"letters":".."}, ...], qubit 0 rightmost.
nlohmann::json to_json(const PauliSum& sum);
PauliSum pauli_sum_from_json(const nlohmann::json& j);

}  // namespace qres::encoding
