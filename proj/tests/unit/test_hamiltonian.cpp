#include <gtest/gtest.h>

#include <sstream>

#include "qres/hamiltonian.hpp"

using namespace qres;
using basis::Family;
using basis::RadialBasisSpec;
using hamiltonian::PotentialModel;

namespace {

// Reference spectra from an independent implementation: closed-form Gaussian
// matrix elements with a Cholesky orthonormalization, and oscillator matrix
// elements by adaptive quadrature with the tridiagonal kinetic matrix.
const std::vector<Complex> kSchematicN6Theta20 = {
    {-0.321460231577384, 0.836681591870936}, {0.836426519205289, -0.643948064757567},
    {1.85769170593992, -4.07946840738616},   {48.4482414331525, -43.9075901312652},
    {508.976868323115, -430.427488208096},   {5042.20001359822, -4234.26340286499}};
const std::vector<double> kSchematicN6Theta0 = {-0.240210297933229, 0.849465025195678, 3.67536674466303,
                                                64.4636380447106,   665.643625620506,  6583.34627675413};
const std::vector<double> kAlphaN10L0 = {-72.7779412722132, -25.8573395706117, 0.286142196209518,
                                         5.85964792909296,  15.7125751696222,  28.6273351635032};
const std::vector<Complex> kAlphaN12L4Theta15 = {{6.45617719297715, -3.35474797925699},
                                                 {11.7808950574463, -1.70110479858137},
                                                 {13.8043909035066, -7.18500840522435},
                                                 {21.9369770310229, -11.8172947898919}};

PotentialModel alpha_alpha() {
    auto p = PotentialModel::alpha_alpha();
    p.hbar2_over_2mu = 10.368;
    return p;
}

}  // namespace

TEST(ScaledHamiltonian, SchematicGaussianMatchesReference) {
    RadialBasisSpec spec{Family::Gaussian, 6, 1, 0.02, 6.0, 1.0};
    const auto s = hamiltonian::solve_spectrum(
        hamiltonian::build_scaled_matrix(spec, PotentialModel::schematic(), 20.0));
    ASSERT_EQ(s.energies.size(), 6u);
    for (std::size_t k = 0; k < 6; ++k) {
        EXPECT_LT(std::abs(s.energies[k] - kSchematicN6Theta20[k]), 1e-9 * std::abs(kSchematicN6Theta20[k]))
            << "k = " << k;
        EXPECT_LT(s.residuals[k], 1e-10);
    }
}

TEST(ScaledHamiltonian, RealSpectrumAtZeroAngle) {
    RadialBasisSpec spec{Family::Gaussian, 6, 1, 0.02, 6.0, 1.0};
    const auto h = hamiltonian::build_scaled_matrix(spec, PotentialModel::schematic(), 0.0);
    EXPECT_LT(h.h.imag().cwiseAbs().maxCoeff(), 1e-14);
    const auto s = hamiltonian::solve_spectrum(h);
    for (std::size_t k = 0; k < 6; ++k) {
        EXPECT_NEAR(s.energies[k].real(), kSchematicN6Theta0[k], 1e-9 * std::abs(kSchematicN6Theta0[k]));
        EXPECT_NEAR(s.energies[k].imag(), 0.0, 1e-10);
    }
}

TEST(ScaledHamiltonian, MatrixIsComplexSymmetric) {
    RadialBasisSpec spec{Family::Gaussian, 12, 1, 0.02, 12.0, 1.0};
    const auto h = hamiltonian::build_scaled_matrix(spec, PotentialModel::schematic(), 17.0);
    EXPECT_LT((h.h - h.h.transpose()).cwiseAbs().maxCoeff(), 1e-12 * h.h.cwiseAbs().maxCoeff());
}

TEST(ScaledHamiltonian, AlphaAlphaOscillatorBound) {
    RadialBasisSpec spec{Family::HarmonicOscillator, 10, 0, 0.02, 10.0, 1.36};
    const auto s = hamiltonian::solve_spectrum(hamiltonian::build_scaled_matrix(spec, alpha_alpha(), 0.0));
    for (std::size_t k = 0; k < kAlphaN10L0.size(); ++k) EXPECT_NEAR(s.energies[k].real(), kAlphaN10L0[k], 1e-7);
}

TEST(ScaledHamiltonian, AlphaAlphaOscillatorRotated) {
    RadialBasisSpec spec{Family::HarmonicOscillator, 12, 4, 0.02, 10.0, 1.36};
    const auto s = hamiltonian::solve_spectrum(hamiltonian::build_scaled_matrix(spec, alpha_alpha(), 15.0));
    for (const auto& ref : kAlphaN12L4Theta15) {
        double best = 1e300;
        for (const auto& e : s.energies) best = std::min(best, std::abs(e - ref));
        EXPECT_LT(best, 1e-7) << ref;
    }
}

TEST(ScaledHamiltonian, RejectsAnglesAtOrBeyond45) {
    RadialBasisSpec spec{Family::Gaussian, 4, 1, 0.02, 4.0, 1.0};
    hamiltonian::ScaledHamiltonianBuilder builder(spec, PotentialModel::schematic());
    EXPECT_THROW(builder.build(45.0), InputError);
    EXPECT_THROW(builder.build(50.0), InputError);
    EXPECT_THROW(builder.build(-1.0), InputError);
    try {
        builder.build(50.0);
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("45"), std::string::npos);
    }
}

TEST(CriticalAngle, SpotChecks) {
    EXPECT_NEAR(hamiltonian::critical_angle({1.1672, -0.0064}), 0.15708075480032596, 1e-12);
    EXPECT_NEAR(hamiltonian::critical_angle({2.0065, -0.4732}), 6.634900868999725, 1e-12);
    EXPECT_NEAR(hamiltonian::critical_angle({11.7840, -1.7639}), 4.256585324708358, 1e-12);
    EXPECT_THROW(hamiltonian::critical_angle({-1.0, -0.1}), InputError);
}

TEST(Classify, LabelsBoundContinuumAndCandidates) {
    hamiltonian::SpectrumResult s;
    const double theta = 20.0;
    const Complex rotated = std::polar(3.0, deg_to_rad(-2 * theta));
    s.energies = {{-0.7, 1e-6}, rotated, {1.17, -0.005}, {0.2, 0.3}};
    const auto labels = hamiltonian::classify_spectrum(s, theta);
    EXPECT_EQ(labels[0], hamiltonian::Label::Bound);
    EXPECT_EQ(labels[1], hamiltonian::Label::Continuum);
    EXPECT_EQ(labels[2], hamiltonian::Label::ResonanceCandidate);
    EXPECT_EQ(labels[3], hamiltonian::Label::Continuum);
}

TEST(SpectrumCsv, Header) {
    hamiltonian::SpectrumResult s;
    s.energies = {{1.0, -0.5}};
    s.residuals = {1e-14};
    s.labels = {hamiltonian::Label::ResonanceCandidate};
    std::ostringstream os;
    hamiltonian::write_spectrum_csv(os, 10.0, 1, s);
    EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "theta_deg,l,index,E_real_MeV,E_imag_MeV,label,residual");
    EXPECT_NE(os.str().find("resonance-candidate"), std::string::npos);
}
