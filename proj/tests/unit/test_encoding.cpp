#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include <Eigen/Eigenvalues>

#include "qres/encoding.hpp"
#include "qres/pauli.hpp"

using namespace qres;
using namespace qres::encoding;

namespace {

CMatrix random_matrix(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d;
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = {d(rng), d(rng)};
    return m;
}

CMatrix random_symmetric(int n, std::uint64_t seed) {
    const CMatrix m = random_matrix(n, seed);
    return (m + m.transpose()) / 2.0;
}

std::vector<Complex> sorted_eigenvalues(const CMatrix& m) {
    Eigen::ComplexEigenSolver<CMatrix> es(m, false);
    std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return ev;
}

}  // namespace

TEST(Pauli, SingleQubitProducts) {
    const auto x = from_letters("X"), y = from_letters("Y"), z = from_letters("Z");
    const auto xy = multiply(x, y);
    EXPECT_EQ(xy.x, 0u);
    EXPECT_EQ(xy.z, 1u);
    EXPECT_LT(std::abs(xy.coeff - Complex(0, 1)), 1e-15);
    const auto zx = multiply(z, x);
    EXPECT_EQ(letters(zx, 1), "Y");
    EXPECT_LT(std::abs(zx.coeff - Complex(0, 1)), 1e-15);
    const auto yy = multiply(y, y);
    EXPECT_TRUE(yy.is_identity());
    EXPECT_LT(std::abs(yy.coeff - 1.0), 1e-15);
}

TEST(Pauli, LettersPutQubitZeroRightmost) {
    const auto p = from_letters("IXZ");
    EXPECT_EQ(p.z, 1u);
    EXPECT_EQ(p.x, 2u);
    EXPECT_EQ(letters(p, 3), "IXZ");
}

TEST(Pauli, DenseMatchesKronecker) {
    CMatrix x(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    // "XZ": X on qubit 1, Z on qubit 0; qubit 1 is the high bit.
    CMatrix ref = CMatrix::Zero(4, 4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) ref(2 * a + b, 2 * c + d) = x(a, c) * z(b, d);
    const PauliSum s(2, {from_letters("XZ")});
    EXPECT_LT((s.to_dense() - ref).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Pauli, DecomposeRoundtrip) {
    for (int n = 1; n <= 5; ++n) {
        const CMatrix m = random_matrix(1 << n, 100 + n);
        const auto sum = pauli_decompose(m);
        EXPECT_LT((sum.to_dense() - m).cwiseAbs().maxCoeff(), 1e-12) << n << " qubits";
    }
}

TEST(Pauli, MultiplyMatchesDenseProduct) {
    const CMatrix a = random_matrix(8, 1), b = random_matrix(8, 2);
    const auto pa = pauli_decompose(a), pb = pauli_decompose(b);
    EXPECT_LT((pauli_multiply(pa, pb).to_dense() - a * b).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((pa.dagger().to_dense() - a.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Pauli, RejectsNonPowerOfTwo) { EXPECT_THROW(pauli_decompose(CMatrix::Identity(3, 3)), InputError); }

TEST(Pauli, JsonRoundtrip) {
    const auto sum = pauli_decompose(random_matrix(4, 7));
    const auto back = pauli_sum_from_json(to_json(sum));
    EXPECT_EQ(back.n_qubits(), 2);
    EXPECT_LT((back.to_dense() - sum.to_dense()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(JordanWigner, OneParticleSectorReproducesMatrix) {
    const CMatrix h = random_symmetric(4, 3);
    const auto dense = encode_onehot_jw(h).to_dense();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) EXPECT_LT(std::abs(dense(1 << i, 1 << j) - h(i, j)), 1e-12);
    EXPECT_LT(std::abs(dense(0, 0)), 1e-12);
}

TEST(JordanWigner, ConservesParticleNumber) {
    const auto dense = encode_onehot_jw(random_matrix(4, 5)).to_dense();
    for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b)
            if (__builtin_popcount(a) != __builtin_popcount(b)) EXPECT_LT(std::abs(dense(a, b)), 1e-12);
}

TEST(JordanWigner, NonSymmetricInputKeepsBothTriangles) {
    CMatrix h(2, 2);
    h << 1.0, Complex(0.3, 0.1), Complex(-0.7, 0.2), 2.0;
    const auto dense = encode_onehot_jw(h).to_dense();
    EXPECT_LT(std::abs(dense(1, 2) - h(0, 1)), 1e-14);
    EXPECT_LT(std::abs(dense(2, 1) - h(1, 0)), 1e-14);
}

TEST(GrayCode, RegisterSizes) {
    EXPECT_EQ(gray_register_size(1), 1);
    EXPECT_EQ(gray_register_size(2), 1);
    EXPECT_EQ(gray_register_size(5), 3);
    EXPECT_EQ(gray_register_size(16), 4);
    EXPECT_EQ(gray_register_size(17), 5);
    EXPECT_EQ(gray_register_size(32), 5);
    EXPECT_EQ(gray_code(0), 0u);
    EXPECT_EQ(gray_code(2), 3u);
    EXPECT_EQ(gray_code(7), 4u);
}

TEST(GrayCode, EmbeddingPlacesElementsOnGrayWords) {
    const CMatrix h = random_symmetric(5, 9);
    const auto dense = encode_gray(h).to_dense();
    ASSERT_EQ(dense.rows(), 8);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) EXPECT_LT(std::abs(dense(gray_code(i), gray_code(j)) - h(i, j)), 1e-12);
    for (int k = 5; k < 8; ++k) EXPECT_LT(dense.row(gray_code(k)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(GrayCode, SpectrumIsMatrixSpectrumPlusZeros) {
    const CMatrix h = random_symmetric(6, 11);
    auto ref = sorted_eigenvalues(h);
    ref.push_back(0.0);
    ref.push_back(0.0);
    std::sort(ref.begin(), ref.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    const auto got = sorted_eigenvalues(encode_gray(h).to_dense());
    ASSERT_EQ(got.size(), ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) EXPECT_LT(std::abs(got[k] - ref[k]), 1e-10);
}

TEST(Hermitianize, IsPositiveSemidefiniteAndVanishesAtEigenpair) {
    const CMatrix h = random_symmetric(4, 21);
    const HermitianizedOperator op(encode_gray(h));
    Eigen::ComplexEigenSolver<CMatrix> es(op.h().to_dense());
    for (Complex e : {Complex(0.3, -0.2), Complex(-1.5, 0.7), es.eigenvalues()[1]}) {
        for (Side side : {Side::Right, Side::Left}) {
            const CMatrix m = op.at(e, side).to_dense();
            EXPECT_LT((m - m.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
            Eigen::SelfAdjointEigenSolver<CMatrix> sa(m);
            EXPECT_GT(sa.eigenvalues().minCoeff(), -1e-10);
        }
    }
    const Complex lambda = es.eigenvalues()[1];
    const CVector v = es.eigenvectors().col(1).normalized();
    const CMatrix right = op.at(lambda, Side::Right).to_dense();
    EXPECT_LT(std::abs((v.adjoint() * right * v)(0, 0)), 1e-10);
}

TEST(Hermitianize, MatchesDenseDefinition) {
    const CMatrix h = random_symmetric(4, 22);
    const Complex e{0.4, -0.9};
    const CMatrix d = encode_gray(h).to_dense();
    const CMatrix id = CMatrix::Identity(4, 4);
    const CMatrix right = (d - e * id).adjoint() * (d - e * id);
    const CMatrix left = (d - e * id) * (d - e * id).adjoint();
    EXPECT_LT((hermitianize(encode_gray(h), e, Side::Right).to_dense() - right).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((hermitianize(encode_gray(h), e, Side::Left).to_dense() - left).cwiseAbs().maxCoeff(), 1e-12);
}
