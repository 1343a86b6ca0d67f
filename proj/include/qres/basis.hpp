#pragma once

#include <vector>

#include "qres/common.hpp"
#include "qres/quadrature.hpp"

namespace qres::basis {

enum class Family { Gaussian, HarmonicOscillator };

/// Radial basis description. Gaussian sets use the geometric range
/// {r1, r_max}; oscillator sets use the length b. Lengths in fm.
struct RadialBasisSpec {
    Family family = Family::Gaussian;
    int size = 2;
    int l = 0;
    double r1 = 0.02;
    double r_max = 16.0;
    double b = 1.36;

    /// Throws InputError when the spec cannot define a basis.
    void validate() const;
};

/// Orthonormalizing transform: columns of `c` are combinations of the raw
/// basis functions with c^T * overlap * c = I.
struct OrthoTransform {
    RMatrix c;
    RMatrix overlap;
    /// Rounding residual of `c`; c + c_low holds the transform to ~30 digits.
    RMatrix c_low;
};

/// alpha_n = 1/r_n^2 with r_n = r1 * a^(n-1), a = (r_max/r1)^(1/(N-1)).
std::vector<double> geometric_alphas(const RadialBasisSpec& spec);

/// Normalized Gaussian radial function r^l N exp(-alpha_n r^2).
double eval_gaussian_radial(int n, double r, const RadialBasisSpec& spec);

/// Normalized oscillator radial function with Laguerre L_n^{l+1/2}(r^2/b^2).
double eval_ho_radial(int n, double r, const RadialBasisSpec& spec);

RMatrix overlap_matrix(const RadialBasisSpec& spec);

/// Sequential (modified, twice-iterated) Gram-Schmidt in the overlap metric,
/// carried out in quad precision. Rejects the basis when function k keeps less
/// than 1e-14 of its norm after projecting out functions 0..k-1.
OrthoTransform gram_schmidt_transform(const RadialBasisSpec& spec);
OrthoTransform gram_schmidt_transform(const RMatrix& overlap);

/// Precomputed evaluator for one spec. `reduced` is u(r) = r * phi(r);
/// `kinetic_reduced` is -u'' + l(l+1) u / r^2, from analytic derivatives.
class RadialBasis {
public:
    explicit RadialBasis(RadialBasisSpec spec);

    const RadialBasisSpec& spec() const { return spec_; }
    int size() const { return spec_.size; }

    double value(int n, double r) const;
    double reduced(int n, double r) const { return r * value(n, r); }
    double kinetic_reduced(int n, double r) const;

    /// Radius beyond which every basis function is negligible (< 1e-15 relative).
    double cutoff_radius() const;
    /// Length scale of the narrowest basis function.
    double inner_scale() const;

    /// Composite quadrature grid adapted to this basis.
    quad::RadialGrid grid(bool refined = false) const;

private:
    RadialBasisSpec spec_;
    std::vector<double> alphas_;
    std::vector<double> log_norms_;
};

}  // namespace qres::basis
