#include "qres/kernels.hpp"

namespace qres::kernels::serial {

void apply_1q(std::span<Complex> amp, int q, const Mat2& m) {
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t k = 0; k < amp.size(); ++k) {
        if (k & bit) continue;
        const Complex a0 = amp[k];
        const Complex a1 = amp[k | bit];
        amp[k] = m[0] * a0 + m[1] * a1;
        amp[k | bit] = m[2] * a0 + m[3] * a1;
    }
}

void apply_2q(std::span<Complex> amp, int q1, int q2, const Mat4& m) {
    const std::size_t b1 = std::size_t{1} << q1;
    const std::size_t b2 = std::size_t{1} << q2;
    for (std::size_t k = 0; k < amp.size(); ++k) {
        if (k & (b1 | b2)) continue;
        const std::size_t idx[4] = {k, k | b1, k | b2, k | b1 | b2};
        Complex in[4];
        for (int a = 0; a < 4; ++a) in[a] = amp[idx[a]];
        for (int r = 0; r < 4; ++r) {
            Complex acc = 0.0;
            for (int c = 0; c < 4; ++c) acc += m[4 * r + c] * in[c];
            amp[idx[r]] = acc;
        }
    }
}

void apply_controlled_phase(std::span<Complex> amp, int control, int target, double phi) {
    const std::size_t mask = (std::size_t{1} << control) | (std::size_t{1} << target);
    const Complex ph = std::polar(1.0, phi);
    for (std::size_t k = 0; k < amp.size(); ++k) {
        if ((k & mask) == mask) amp[k] *= ph;
    }
}

Complex pauli_expectation(std::span<const Complex> amp, std::uint64_t x, std::uint64_t z) {
    Complex acc = 0.0;
    for (std::size_t k = 0; k < amp.size(); ++k) {
        acc += std::conj(amp[k ^ x]) * pauli_phase(x, z, k) * amp[k];
    }
    return acc;
}

void weighted_product(const RMatrix& u, std::span<const Complex> w, const RMatrix& v, CMatrix& out) {
    const auto n = u.rows();
    const auto m = v.rows();
    const auto nodes = u.cols();
    out.resize(n, m);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            Complex acc = 0.0;
            for (Eigen::Index k = 0; k < nodes; ++k) acc += u(i, k) * w[k] * v(j, k);
            out(i, j) = acc;
        }
    }
}

}  // namespace qres::kernels::serial
