#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "qres/common.hpp"

// Data-parallel inner loops. Every kernel exists twice with identical
// signatures: `serial` is the reference implementation the tests compare
// against, `parallel` splits the outer loop across OpenMP threads.
namespace qres::kernels {

using Mat2 = std::array<Complex, 4>;   // row-major 2x2
using Mat4 = std::array<Complex, 16>;  // row-major 4x4, local index = bit(q1) + 2*bit(q2)

/// Statevector size at and above which callers switch to the parallel kernels.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 14;

namespace serial {
void apply_1q(std::span<Complex> amp, int q, const Mat2& m);
void apply_2q(std::span<Complex> amp, int q1, int q2, const Mat4& m);
void apply_controlled_phase(std::span<Complex> amp, int control, int target, double phi);
Complex pauli_expectation(std::span<const Complex> amp, std::uint64_t x, std::uint64_t z);
/// out(i,j) = sum_k u(i,k) * w[k] * v(j,k)
void weighted_product(const RMatrix& u, std::span<const Complex> w, const RMatrix& v, CMatrix& out);
}  // namespace serial

namespace parallel {
void apply_1q(std::span<Complex> amp, int q, const Mat2& m);
void apply_2q(std::span<Complex> amp, int q1, int q2, const Mat4& m);
void apply_controlled_phase(std::span<Complex> amp, int control, int target, double phi);
Complex pauli_expectation(std::span<const Complex> amp, std::uint64_t x, std::uint64_t z);
void weighted_product(const RMatrix& u, std::span<const Complex> w, const RMatrix& v, CMatrix& out);
}  // namespace parallel

/// i^{|x & z|} * (-1)^{|z & k|}: the phase of <k XOR x| P |k> for P = X^x Z^z with Y = iXZ.
inline Complex pauli_phase(std::uint64_t x, std::uint64_t z, std::uint64_t k) {
    static constexpr std::array<Complex, 4> ipow{Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
    const int ys = __builtin_popcountll(x & z) & 3;
    const int sign = __builtin_popcountll(z & k) & 1;
    const Complex p = ipow[ys];
    return sign ? -p : p;
}

}  // namespace qres::kernels
