#include "qres/basis.hpp"

#include <cmath>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qres/special.hpp"

namespace qres::basis {
namespace {

constexpr double kGrowth = 1.15;
constexpr int kOrder = 32;
constexpr double kDependenceFloor = 1e-14;

double gaussian_log_norm(double alpha, int l) {
    return 0.5 * (std::log(2.0) + (l + 1.5) * std::log(2.0 * alpha) - std::lgamma(l + 1.5));
}

double ho_log_norm(int n, int l, double b) {
    return 0.5 * (std::log(2.0) + std::lgamma(n + 1.0) - std::lgamma(n + l + 1.5)) - 1.5 * std::log(b);
}

}  // namespace

void RadialBasisSpec::validate() const {
    if (size < 1) throw InputError("basis: size must be positive");
    if (l < 0) throw InputError("basis: l must be non-negative");
    if (family == Family::Gaussian) {
        if (size < 2) throw InputError("basis: Gaussian geometric progression needs N >= 2");
        if (!(r1 > 0.0)) throw InputError("basis: r1 must be positive");
        if (!(r_max > r1)) throw InputError("basis: r_max must exceed r1");
    } else if (!(b > 0.0)) {
        throw InputError("basis: oscillator length b must be positive");
    }
}

std::vector<double> geometric_alphas(const RadialBasisSpec& spec) {
    if (spec.family != Family::Gaussian) throw InputError("geometric_alphas: not a Gaussian basis");
    spec.validate();
    const int n = spec.size;
    const double ratio = std::pow(spec.r_max / spec.r1, 1.0 / (n - 1));
    std::vector<double> alphas(n);
    for (int k = 0; k < n; ++k) {
        const double r = spec.r1 * std::pow(ratio, k);
        alphas[k] = 1.0 / (r * r);
    }
    return alphas;
}

double eval_gaussian_radial(int n, double r, const RadialBasisSpec& spec) {
    const auto alphas = geometric_alphas(spec);
    if (n < 0 || n >= spec.size) throw InputError("eval_gaussian_radial: index out of range");
    const double a = alphas[n];
    return std::pow(r, spec.l) * std::exp(gaussian_log_norm(a, spec.l) - a * r * r);
}

double eval_ho_radial(int n, double r, const RadialBasisSpec& spec) {
    if (!(spec.b > 0.0)) throw InputError("eval_ho_radial: b must be positive");
    if (n < 0) throw InputError("eval_ho_radial: negative index");
    const double x = r / spec.b;
    return std::exp(ho_log_norm(n, spec.l, spec.b) - 0.5 * x * x) * std::pow(x, spec.l) *
           special::laguerre(n, spec.l + 0.5, x * x);
}

RMatrix overlap_matrix(const RadialBasisSpec& spec) {
    spec.validate();
    const int n = spec.size;
    if (spec.family == Family::HarmonicOscillator) return RMatrix::Identity(n, n);
    const auto a = geometric_alphas(spec);
    RMatrix s(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            s(i, j) = i == j ? 1.0 : std::pow(2.0 * std::sqrt(a[i] * a[j]) / (a[i] + a[j]), spec.l + 1.5);
        }
    }
    return s;
}

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;
using QuadMatrix = std::vector<std::vector<Quad>>;

// Gram-Schmidt in extended precision: Gaussian sets with N ~ 75 have overlap
// condition numbers near 1e16, beyond what double-precision projections hold.
OrthoTransform gram_schmidt_quad(const QuadMatrix& s, const RMatrix& overlap) {
    const std::size_t n = s.size();
    QuadMatrix c(n, std::vector<Quad>(n));
    QuadMatrix sc(n, std::vector<Quad>(n));  // sc[j] = S * c[j]
    auto dot = [n](const std::vector<Quad>& a, const std::vector<Quad>& b) {
        Quad acc = 0;
        for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
        return acc;
    };
    for (std::size_t k = 0; k < n; ++k) {
        const Quad norm0 = s[k][k];
        if (!(norm0 > 0)) throw NumericalError("gram_schmidt: non-positive norm for basis function " + std::to_string(k));
        std::vector<Quad> v(n, Quad(0));
        std::vector<Quad> sv(n);
        v[k] = 1;
        for (std::size_t i = 0; i < n; ++i) sv[i] = s[i][k];
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < k; ++j) {
                const Quad proj = dot(c[j], sv);
                for (std::size_t i = 0; i < n; ++i) {
                    v[i] -= proj * c[j][i];
                    sv[i] -= proj * sc[j][i];
                }
            }
        }
        const Quad norm2 = dot(v, sv);
        const double rel = static_cast<double>(norm2 / norm0);
        if (!(rel > kDependenceFloor)) {
            throw NumericalError("gram_schmidt: basis function " + std::to_string(k) +
                                 " is numerically dependent on functions 0.." + std::to_string(static_cast<long>(k) - 1) +
                                 " (residual norm^2 " + std::to_string(rel) + ")");
        }
        const Quad inv = 1 / boost::multiprecision::sqrt(norm2);
        for (std::size_t i = 0; i < n; ++i) {
            c[k][i] = v[i] * inv;
            sc[k][i] = sv[i] * inv;
        }
    }
    OrthoTransform out{RMatrix(n, n), overlap, RMatrix(n, n)};
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const double hi = static_cast<double>(c[j][i]);
            out.c(i, j) = hi;
            out.c_low(i, j) = static_cast<double>(c[j][i] - hi);
        }
    }
    return out;
}

}  // namespace

OrthoTransform gram_schmidt_transform(const RMatrix& overlap) {
    const auto n = overlap.rows();
    if (overlap.cols() != n) throw InputError("gram_schmidt: overlap must be square");
    QuadMatrix s(n, std::vector<Quad>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) s[i][j] = overlap(i, j);
    }
    return gram_schmidt_quad(s, overlap);
}

OrthoTransform gram_schmidt_transform(const RadialBasisSpec& spec) {
    const RMatrix overlap = overlap_matrix(spec);
    if (spec.family == Family::HarmonicOscillator) {
        const auto n = overlap.rows();
        return {RMatrix::Identity(n, n), overlap, RMatrix::Zero(n, n)};
    }
    const auto a = geometric_alphas(spec);
    const std::size_t n = a.size();
    const Quad power = Quad(spec.l) + Quad(3) / 2;
    QuadMatrix s(n, std::vector<Quad>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Quad ai = a[i];
            const Quad aj = a[j];
            s[i][j] = i == j ? Quad(1) : boost::multiprecision::pow(2 * boost::multiprecision::sqrt(ai * aj) / (ai + aj), power);
        }
    }
    return gram_schmidt_quad(s, overlap);
}

RadialBasis::RadialBasis(RadialBasisSpec spec) : spec_(spec) {
    spec_.validate();
    if (spec_.family == Family::Gaussian) {
        alphas_ = geometric_alphas(spec_);
        for (double a : alphas_) log_norms_.push_back(gaussian_log_norm(a, spec_.l));
    } else {
        for (int n = 0; n < spec_.size; ++n) log_norms_.push_back(ho_log_norm(n, spec_.l, spec_.b));
    }
}

double RadialBasis::value(int n, double r) const {
    const int l = spec_.l;
    if (spec_.family == Family::Gaussian) {
        const double a = alphas_[n];
        return std::pow(r, l) * std::exp(log_norms_[n] - a * r * r);
    }
    const double x = r / spec_.b;
    return std::exp(log_norms_[n] - 0.5 * x * x) * std::pow(x, l) * special::laguerre(n, l + 0.5, x * x);
}

double RadialBasis::kinetic_reduced(int n, double r) const {
    const int l = spec_.l;
    if (spec_.family == Family::Gaussian) {
        const double a = alphas_[n];
        const double env = std::exp(log_norms_[n] - a * r * r) * std::pow(r, l + 1);
        return env * (2.0 * a * (2 * l + 3) - 4.0 * a * a * r * r);
    }
    // Oscillator functions solve the oscillator equation exactly.
    const double b2 = spec_.b * spec_.b;
    return ((4.0 * n + 2.0 * l + 3.0) / b2 - r * r / (b2 * b2)) * reduced(n, r);
}

double RadialBasis::cutoff_radius() const {
    if (spec_.family == Family::Gaussian) return 6.0 * spec_.r_max;
    const double n_max = spec_.size - 1;
    return spec_.b * std::max(10.0, std::sqrt(4.0 * n_max + 2.0 * spec_.l + 63.0));
}

double RadialBasis::inner_scale() const {
    return spec_.family == Family::Gaussian ? spec_.r1 : spec_.b;
}

quad::RadialGrid RadialBasis::grid(bool refined) const {
    const double inner = 0.5 * inner_scale() / (spec_.family == Family::Gaussian ? 1.0 : 2.0);
    return refined ? quad::refine(inner, cutoff_radius(), kGrowth, kOrder)
                   : quad::radial_grid(inner, cutoff_radius(), kGrowth, kOrder);
}

}  // namespace qres::basis
