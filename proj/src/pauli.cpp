#include "qres/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qres/kernels.hpp"

namespace qres::encoding {
namespace {

void check_register(int n) {
    if (n < 0 || n > 62) throw InputError("pauli: register size must be in [0, 62], got " + std::to_string(n));
}

Complex ipow(int k) {
    switch (k & 3) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

}  // namespace

std::string letters(const PauliString& p, int n_qubits) {
    std::string s(n_qubits, 'I');
    for (int q = 0; q < n_qubits; ++q) {
        const bool xb = (p.x >> q) & 1U;
        const bool zb = (p.z >> q) & 1U;
        s[n_qubits - 1 - q] = xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }
    return s;
}

PauliString from_letters(std::string_view text, Complex coeff) {
    check_register(static_cast<int>(text.size()));
    PauliString p{coeff, 0, 0};
    const auto n = text.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t bit = std::uint64_t{1} << (n - 1 - i);
        switch (text[i]) {
            case 'I': break;
            case 'X': p.x |= bit; break;
            case 'Y': p.x |= bit; p.z |= bit; break;
            case 'Z': p.z |= bit; break;
            default: throw InputError(std::string("pauli: invalid letter '") + text[i] + "'");
        }
    }
    return p;
}

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) { check_register(n_qubits); }

PauliSum::PauliSum(int n_qubits, std::vector<PauliString> terms) : n_qubits_(n_qubits), terms_(std::move(terms)) {
    check_register(n_qubits);
    const std::uint64_t mask = n_qubits == 0 ? 0 : (~std::uint64_t{0} >> (64 - n_qubits));
    for (const auto& t : terms_) {
        if (((t.x | t.z) & ~mask) != 0) throw InputError("pauli: string acts outside the register");
        if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag())) {
            throw InputError("pauli: non-finite coefficient");
        }
    }
    normalize();
}

PauliSum PauliSum::identity(int n_qubits, Complex coeff) { return PauliSum(n_qubits, {PauliString{coeff, 0, 0}}); }

void PauliSum::normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const PauliString& a, const PauliString& b) { return a.x != b.x ? a.x < b.x : a.z < b.z; });
    std::vector<PauliString> merged;
    merged.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (!merged.empty() && merged.back().x == t.x && merged.back().z == t.z) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(t);
        }
    }
    std::erase_if(merged, [](const PauliString& t) { return std::abs(t.coeff) < kDropThreshold; });
    terms_ = std::move(merged);
}

Complex PauliSum::coeff(std::uint64_t x, std::uint64_t z) const {
    const auto it = std::lower_bound(terms_.begin(), terms_.end(), PauliString{0.0, x, z},
                                     [](const PauliString& a, const PauliString& b) {
                                         return a.x != b.x ? a.x < b.x : a.z < b.z;
                                     });
    return it != terms_.end() && it->x == x && it->z == z ? it->coeff : Complex(0.0);
}

PauliSum PauliSum::dagger() const {
    PauliSum out = *this;
    for (auto& t : out.terms_) t.coeff = std::conj(t.coeff);
    return out;
}

PauliSum PauliSum::scaled(Complex s) const {
    PauliSum out = *this;
    for (auto& t : out.terms_) t.coeff *= s;
    out.normalize();
    return out;
}

CMatrix PauliSum::to_dense() const {
    if (n_qubits_ > 14) throw InputError("pauli: dense form limited to 14 qubits");
    const std::uint64_t dim = std::uint64_t{1} << n_qubits_;
    CMatrix m = CMatrix::Zero(dim, dim);
    for (const auto& t : terms_) {
        for (std::uint64_t k = 0; k < dim; ++k) m(k ^ t.x, k) += t.coeff * kernels::pauli_phase(t.x, t.z, k);
    }
    return m;
}

double PauliSum::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
    return m;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
    if (other.n_qubits_ != n_qubits_) throw InputError("pauli: register size mismatch in sum");
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    normalize();
    return *this;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
    PauliString out{a.coeff * b.coeff, a.x ^ b.x, a.z ^ b.z};
    const int ya = std::popcount(a.x & a.z);
    const int yb = std::popcount(b.x & b.z);
    const int yc = std::popcount(out.x & out.z);
    const int swap = std::popcount(a.z & b.x);
    out.coeff *= ipow(ya + yb - yc + 2 * swap);
    return out;
}

PauliSum pauli_decompose(const CMatrix& m) {
    const auto dim = m.rows();
    if (m.cols() != dim || dim < 1 || (dim & (dim - 1)) != 0) {
        throw InputError("pauli_decompose: matrix must be square with power-of-two dimension (zero-pad first), got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    const int n = std::countr_zero(static_cast<std::uint64_t>(dim));
    std::vector<PauliString> terms;
    std::vector<Complex> f(dim);
    for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(dim); ++x) {
        for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(dim); ++k) f[k] = m(k, k ^ x);
        // Walsh-Hadamard: f[z] <- sum_k (-1)^{|z&k|} f[k]
        for (std::uint64_t h = 1; h < static_cast<std::uint64_t>(dim); h <<= 1) {
            for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(dim); i += 2 * h) {
                for (std::uint64_t j = i; j < i + h; ++j) {
                    const Complex a = f[j];
                    const Complex b = f[j + h];
                    f[j] = a + b;
                    f[j + h] = a - b;
                }
            }
        }
        for (std::uint64_t z = 0; z < static_cast<std::uint64_t>(dim); ++z) {
            const Complex c = ipow(std::popcount(x & z)) * f[z] / static_cast<double>(dim);
            if (std::abs(c) >= PauliSum::kDropThreshold) terms.push_back({c, x, z});
        }
    }
    return PauliSum(n, std::move(terms));
}

PauliSum pauli_multiply(const PauliSum& a, const PauliSum& b) {
    if (a.n_qubits() != b.n_qubits()) {
        throw InputError("pauli_multiply: register sizes differ (" + std::to_string(a.n_qubits()) + " vs " +
                         std::to_string(b.n_qubits()) + ")");
    }
    std::vector<PauliString> terms;
    terms.reserve(a.size() * b.size());
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) terms.push_back(multiply(ta, tb));
    }
    return PauliSum(a.n_qubits(), std::move(terms));
}

nlohmann::json to_json(const PauliSum& sum) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : sum.terms()) {
        terms.push_back({{"coeff_re", t.coeff.real()}, {"coeff_im", t.coeff.imag()}, {"letters", letters(t, sum.n_qubits())}});
    }
    return {{"n_qubits", sum.n_qubits()}, {"qubit_order", "qubit 0 rightmost"}, {"terms", terms}};
}

PauliSum pauli_sum_from_json(const nlohmann::json& j) {
    const int n = j.at("n_qubits").get<int>();
    std::vector<PauliString> terms;
    for (const auto& t : j.at("terms")) {
        const auto text = t.at("letters").get<std::string>();
        if (static_cast<int>(text.size()) != n) throw InputError("pauli: letter string length differs from n_qubits");
        terms.push_back(from_letters(text, {t.at("coeff_re").get<double>(), t.at("coeff_im").get<double>()}));
    }
    return PauliSum(n, std::move(terms));
}

}  // namespace qres::encoding
