#pragma once

#include <iosfwd>
#include <vector>

#include "qres/basis.hpp"
#include "qres/common.hpp"
#include "qres/potential.hpp"

namespace qres::hamiltonian {

/// Complex-rotated Hamiltonian in the orthonormalized basis. `h` is complex
/// symmetric (c-product: no conjugation of the real radial functions).
struct ScaledHamiltonian {
    double theta_deg = 0.0;
    int l = 0;
    CMatrix h;
    basis::RadialBasisSpec basis;
    PotentialModel potential;
};

enum class Label { Bound, ResonanceCandidate, Continuum };

const char* to_string(Label label);

struct SpectrumResult {
    std::vector<Complex> energies;  // sorted by real part
    CMatrix vectors;                // column k is the right eigenvector of energies[k]
    std::vector<double> residuals;  // ||(H - E) c|| / ||c||
    std::vector<Label> labels;      // filled by classify_spectrum
};

struct BuildOptions {
    /// Rebuild on the refined grid and fail if any element moves by more than
    /// this fraction of max|H|.
    double convergence_tol = 1e-8;
    bool check_convergence = true;
    bool use_parallel = true;
};

/// Evaluates the basis once on its quadrature grid and assembles
/// e^{-2i theta} T + V(r e^{i theta}) for any theta.
class ScaledHamiltonianBuilder {
public:
    ScaledHamiltonianBuilder(const basis::RadialBasisSpec& spec, const PotentialModel& potential,
                             BuildOptions options = {});

    ScaledHamiltonian build(double theta_deg) const;

    /// Kinetic matrix in the raw (non-orthogonal) basis, including the
    /// centrifugal term.
    const RMatrix& raw_kinetic() const { return fine_.kinetic; }
    const basis::OrthoTransform& transform() const { return ortho_; }
    /// Potential matrix in the raw basis.
    CMatrix raw_potential(double theta_deg) const;

private:
    struct GridData {
        std::vector<double> r;
        std::vector<double> w;
        RMatrix u;  // basis x node: u_n(r_k)
        RMatrix kinetic;
    };

    GridData make_grid(bool refined) const;
    CMatrix raw_hamiltonian(const GridData& grid, double theta_deg) const;

    basis::RadialBasisSpec spec_;
    PotentialModel potential_;
    BuildOptions options_;
    basis::RadialBasis basis_;
    basis::OrthoTransform ortho_;
    GridData fine_;
    GridData check_;
};

/// H_ij = e^{-2i theta} T_ij + <i|V(r e^{i theta})|j>, transformed by C^T H C.
ScaledHamiltonian build_scaled_matrix(const basis::RadialBasisSpec& spec, const PotentialModel& potential,
                                      double theta_deg, BuildOptions options = {});

SpectrumResult solve_spectrum(const CMatrix& h);
SpectrumResult solve_spectrum(const ScaledHamiltonian& h);

/// theta_c = 1/2 atan(Gamma / (2 E_r)) with Gamma = 2|E_i|, in degrees.
double critical_angle(Complex energy);

struct ClassifyOptions {
    double tol_bound = 1e-3;   // MeV
    double tol_continuum_deg = 3.0;
};

/// Bound: E_r < 0 and |E_i| < tol_bound. Continuum: arg(E) within
/// tol_continuum_deg of -2 theta (or |E| ~ 0, or upper half plane).
/// Everything else is a resonance candidate.
std::vector<Label> classify_spectrum(const SpectrumResult& spectrum, double theta_deg, ClassifyOptions options = {});

/// CSV columns: theta_deg,l,index,E_real_MeV,E_imag_MeV,label,residual
void write_spectrum_csv(std::ostream& os, double theta_deg, int l, const SpectrumResult& spectrum);

}  // namespace qres::hamiltonian
