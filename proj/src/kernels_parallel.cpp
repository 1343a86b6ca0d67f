#include <omp.h>

#include "qres/kernels.hpp"

namespace qres::kernels::parallel {

void apply_1q(std::span<Complex> amp, int q, const Mat2& m) {
    const std::size_t bit = std::size_t{1} << q;
    const std::int64_t half = static_cast<std::int64_t>(amp.size() / 2);
    Complex* data = amp.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t p = 0; p < half; ++p) {
        // insert a zero at position q of the pair index
        const std::size_t lo = static_cast<std::size_t>(p) & (bit - 1);
        const std::size_t k = ((static_cast<std::size_t>(p) >> q) << (q + 1)) | lo;
        const Complex a0 = data[k];
        const Complex a1 = data[k | bit];
        data[k] = m[0] * a0 + m[1] * a1;
        data[k | bit] = m[2] * a0 + m[3] * a1;
    }
}

void apply_2q(std::span<Complex> amp, int q1, int q2, const Mat4& m) {
    const std::size_t b1 = std::size_t{1} << q1;
    const std::size_t b2 = std::size_t{1} << q2;
    const std::int64_t size = static_cast<std::int64_t>(amp.size());
    Complex* data = amp.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t kk = 0; kk < size; ++kk) {
        const auto k = static_cast<std::size_t>(kk);
        if (k & (b1 | b2)) continue;
        const std::size_t idx[4] = {k, k | b1, k | b2, k | b1 | b2};
        Complex in[4];
        for (int a = 0; a < 4; ++a) in[a] = data[idx[a]];
        for (int r = 0; r < 4; ++r) {
            Complex acc = 0.0;
            for (int c = 0; c < 4; ++c) acc += m[4 * r + c] * in[c];
            data[idx[r]] = acc;
        }
    }
}

void apply_controlled_phase(std::span<Complex> amp, int control, int target, double phi) {
    const std::size_t mask = (std::size_t{1} << control) | (std::size_t{1} << target);
    const Complex ph = std::polar(1.0, phi);
    const std::int64_t size = static_cast<std::int64_t>(amp.size());
    Complex* data = amp.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < size; ++k) {
        if ((static_cast<std::size_t>(k) & mask) == mask) data[k] *= ph;
    }
}

Complex pauli_expectation(std::span<const Complex> amp, std::uint64_t x, std::uint64_t z) {
    double re = 0.0;
    double im = 0.0;
    const std::int64_t size = static_cast<std::int64_t>(amp.size());
    const Complex* data = amp.data();
#pragma omp parallel for schedule(static) reduction(+ : re, im)
    for (std::int64_t kk = 0; kk < size; ++kk) {
        const auto k = static_cast<std::uint64_t>(kk);
        const Complex t = std::conj(data[k ^ x]) * pauli_phase(x, z, k) * data[k];
        re += t.real();
        im += t.imag();
    }
    return {re, im};
}

void weighted_product(const RMatrix& u, std::span<const Complex> w, const RMatrix& v, CMatrix& out) {
    const auto n = u.rows();
    const auto m = v.rows();
    const auto nodes = u.cols();
    out.resize(n, m);
#pragma omp parallel for collapse(2) schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            Complex acc = 0.0;
            for (Eigen::Index k = 0; k < nodes; ++k) acc += u(i, k) * w[k] * v(j, k);
            out(i, j) = acc;
        }
    }
}

}  // namespace qres::kernels::parallel
