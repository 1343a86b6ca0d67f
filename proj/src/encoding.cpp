#include "qres/encoding.hpp"

#include <bit>

namespace qres::encoding {

const char* to_string(Encoding e) { return e == Encoding::OneHotJW ? "onehot-jw" : "gray"; }

PauliSum encode_onehot_jw(const CMatrix& h) {
    const auto n = h.rows();
    if (h.cols() != n || n < 1) throw InputError("encode_onehot_jw: matrix must be square and non-empty");
    if (n > 62) throw InputError("encode_onehot_jw: at most 62 basis states");
    std::vector<PauliString> terms;
    for (Eigen::Index i = 0; i < n; ++i) {
        const std::uint64_t bi = std::uint64_t{1} << i;
        terms.push_back({0.5 * h(i, i), 0, 0});
        terms.push_back({-0.5 * h(i, i), 0, bi});
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const std::uint64_t bj = std::uint64_t{1} << j;
            const std::uint64_t chain = (bj - 1) & ~((bi << 1) - 1);
            const Complex sym = 0.25 * (h(i, j) + h(j, i));
            const Complex anti = Complex(0, 0.25) * (h(i, j) - h(j, i));
            const std::uint64_t x = bi | bj;
            terms.push_back({sym, x, chain});            // X_i Z.. X_j
            terms.push_back({sym, x, chain | bi | bj});  // Y_i Z.. Y_j
            terms.push_back({anti, x, chain | bj});      // X_i Z.. Y_j
            terms.push_back({-anti, x, chain | bi});     // Y_i Z.. X_j
        }
    }
    return PauliSum(static_cast<int>(n), std::move(terms));
}

int gray_register_size(int n_states) {
    if (n_states < 1) throw InputError("encode_gray: need at least one basis state");
    return std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(n_states - 1))));
}

CMatrix gray_embed(const CMatrix& h) {
    const auto n = h.rows();
    if (h.cols() != n) throw InputError("encode_gray: matrix must be square");
    const int q = gray_register_size(static_cast<int>(n));
    const auto dim = Eigen::Index{1} << q;
    CMatrix m = CMatrix::Zero(dim, dim);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) m(gray_code(a), gray_code(b)) = h(a, b);
    }
    return m;
}

PauliSum encode_gray(const CMatrix& h) { return pauli_decompose(gray_embed(h)); }

PauliSum encode(const CMatrix& h, Encoding e) {
    return e == Encoding::OneHotJW ? encode_onehot_jw(h) : encode_gray(h);
}

HermitianizedOperator::HermitianizedOperator(PauliSum h)
    : h_(std::move(h)),
      h_dagger_(h_.dagger()),
      hdag_h_(pauli_multiply(h_dagger_, h_)),
      h_hdag_(pauli_multiply(h_, h_dagger_)) {}

PauliSum HermitianizedOperator::at(Complex e, Side side) const {
    const PauliSum& quad = side == Side::Right ? hdag_h_ : h_hdag_;
    return quad + h_.scaled(-std::conj(e)) + h_dagger_.scaled(-e) + PauliSum::identity(n_qubits(), std::norm(e));
}

PauliSum hermitianize(const PauliSum& h, Complex e, Side side) { return HermitianizedOperator(h).at(e, side); }

}  // namespace qres::encoding
