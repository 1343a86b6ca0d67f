#include "qres/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qres/kernels.hpp"

namespace qres::hamiltonian {
namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

// C^T H C for upper-triangular C, accumulated in quad precision and mirrored so
// the result is exactly symmetric. |C| reaches 1e6 for large Gaussian sets, and
// double accumulation leaves O(1) asymmetric rounding in the transformed matrix.
CMatrix transform_symmetric(const basis::OrthoTransform& t, const CMatrix& raw) {
    const auto n = t.c.rows();
    std::vector<Quad> cq(n * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i <= j; ++i) cq[i + j * n] = Quad(t.c(i, j)) + t.c_low(i, j);
    }
    std::vector<Quad> mr(n * n);
    std::vector<Quad> mi(n * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = 0; k < n; ++k) {
            Quad sr = 0;
            Quad si = 0;
            for (Eigen::Index l = 0; l <= j; ++l) {
                const Quad& cl = cq[l + j * n];
                sr += cl * raw(k, l).real();
                si += cl * raw(k, l).imag();
            }
            mr[k + j * n] = sr;
            mi[k + j * n] = si;
        }
    }
    CMatrix h(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i <= j; ++i) {
            Quad sr = 0;
            Quad si = 0;
            for (Eigen::Index k = 0; k <= i; ++k) {
                const Quad& ck = cq[k + i * n];
                sr += ck * mr[k + j * n];
                si += ck * mi[k + j * n];
            }
            h(i, j) = h(j, i) = Complex(static_cast<double>(sr), static_cast<double>(si));
        }
    }
    return h;
}

}  // namespace

const char* to_string(Label label) {
    switch (label) {
        case Label::Bound: return "bound";
        case Label::ResonanceCandidate: return "resonance-candidate";
        case Label::Continuum: return "continuum";
    }
    return "unknown";
}

ScaledHamiltonianBuilder::ScaledHamiltonianBuilder(const basis::RadialBasisSpec& spec,
                                                   const PotentialModel& potential, BuildOptions options)
    : spec_(spec), potential_(potential), options_(options), basis_(spec) {
    potential_.validate();
    ortho_ = basis::gram_schmidt_transform(spec_);
    fine_ = make_grid(false);
    if (options_.check_convergence) check_ = make_grid(true);
}

ScaledHamiltonianBuilder::GridData ScaledHamiltonianBuilder::make_grid(bool refined) const {
    const auto grid = basis_.grid(refined);
    const int n = basis_.size();
    const auto m = static_cast<Eigen::Index>(grid.size());
    GridData g{grid.r, grid.w, RMatrix(n, m), RMatrix(n, n)};
    RMatrix kin(n, m);
    for (int i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < m; ++k) {
            g.u(i, k) = basis_.reduced(i, grid.r[k]);
            kin(i, k) = basis_.kinetic_reduced(i, grid.r[k]);
        }
    }
    const std::vector<Complex> w(grid.w.begin(), grid.w.end());
    CMatrix t;
    kernels::serial::weighted_product(g.u, w, kin, t);
    const RMatrix tr = t.real();
    g.kinetic = potential_.hbar2_over_2mu * 0.5 * (tr + tr.transpose());
    return g;
}

CMatrix ScaledHamiltonianBuilder::raw_hamiltonian(const GridData& grid, double theta_deg) const {
    const Complex rot = std::polar(1.0, deg_to_rad(theta_deg));
    std::vector<Complex> wv(grid.r.size());
    for (std::size_t k = 0; k < grid.r.size(); ++k) {
        wv[k] = grid.w[k] * eval_potential(potential_, grid.r[k] * rot);
    }
    CMatrix v;
    if (options_.use_parallel) {
        kernels::parallel::weighted_product(grid.u, wv, grid.u, v);
    } else {
        kernels::serial::weighted_product(grid.u, wv, grid.u, v);
    }
    const Complex kin_phase = std::conj(rot * rot);
    CMatrix h = kin_phase * grid.kinetic.cast<Complex>() + 0.5 * (v + v.transpose());
    return h;
}

CMatrix ScaledHamiltonianBuilder::raw_potential(double theta_deg) const {
    const Complex kin_phase = std::polar(1.0, -2.0 * deg_to_rad(theta_deg));
    return raw_hamiltonian(fine_, theta_deg) - kin_phase * fine_.kinetic.cast<Complex>();
}

ScaledHamiltonian ScaledHamiltonianBuilder::build(double theta_deg) const {
    if (!(theta_deg >= 0.0 && theta_deg < 45.0)) {
        throw InputError("build_scaled_matrix: theta must lie in [0, 45) degrees, got " + std::to_string(theta_deg));
    }
    const CMatrix raw = raw_hamiltonian(fine_, theta_deg);
    if (options_.check_convergence) {
        const CMatrix ref = raw_hamiltonian(check_, theta_deg);
        const double scale = raw.cwiseAbs().maxCoeff();
        Eigen::Index bi = 0;
        Eigen::Index bj = 0;
        const double diff = (raw - ref).cwiseAbs().maxCoeff(&bi, &bj);
        if (diff > options_.convergence_tol * scale) {
            std::ostringstream msg;
            msg << "build_scaled_matrix: quadrature not converged for element (" << bi << "," << bj
                << "): relative change " << diff / scale << " on node doubling";
            throw NumericalError(msg.str());
        }
    }
    CMatrix h = spec_.family == basis::Family::HarmonicOscillator ? raw : transform_symmetric(ortho_, raw);
    return {theta_deg, spec_.l, std::move(h), spec_, potential_};
}

ScaledHamiltonian build_scaled_matrix(const basis::RadialBasisSpec& spec, const PotentialModel& potential,
                                      double theta_deg, BuildOptions options) {
    return ScaledHamiltonianBuilder(spec, potential, options).build(theta_deg);
}

SpectrumResult solve_spectrum(const CMatrix& h) {
    if (h.rows() != h.cols()) throw InputError("solve_spectrum: matrix must be square");
    if (!h.allFinite()) throw InputError("solve_spectrum: matrix has non-finite entries");
    Eigen::ComplexEigenSolver<CMatrix> solver(h, true);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("solve_spectrum: eigensolver did not converge");
    }
    const auto n = h.rows();
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto& ev = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
        if (ev[a].real() != ev[b].real()) return ev[a].real() < ev[b].real();
        return ev[a].imag() < ev[b].imag();
    });
    SpectrumResult out;
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex e = ev[order[k]];
        CVector v = solver.eigenvectors().col(order[k]);
        out.energies.push_back(e);
        out.residuals.push_back((h * v - e * v).norm() / v.norm());
        out.vectors.col(k) = v;
    }
    return out;
}

SpectrumResult solve_spectrum(const ScaledHamiltonian& h) { return solve_spectrum(h.h); }

double critical_angle(Complex energy) {
    if (!(energy.real() > 0.0)) throw InputError("critical_angle: requires E_r > 0");
    const double gamma = 2.0 * std::abs(energy.imag());
    return rad_to_deg(0.5 * std::atan(gamma / (2.0 * energy.real())));
}

std::vector<Label> classify_spectrum(const SpectrumResult& spectrum, double theta_deg, ClassifyOptions options) {
    std::vector<Label> labels;
    labels.reserve(spectrum.energies.size());
    for (const Complex e : spectrum.energies) {
        if (e.real() < 0.0 && std::abs(e.imag()) < options.tol_bound) {
            labels.push_back(Label::Bound);
            continue;
        }
        if (std::abs(e) < options.tol_bound || e.imag() > 0.0) {
            labels.push_back(Label::Continuum);
            continue;
        }
        const double off = rad_to_deg(std::arg(e)) + 2.0 * theta_deg;
        labels.push_back(std::abs(off) < options.tol_continuum_deg ? Label::Continuum : Label::ResonanceCandidate);
    }
    return labels;
}

void write_spectrum_csv(std::ostream& os, double theta_deg, int l, const SpectrumResult& spectrum) {
    os << "theta_deg,l,index,E_real_MeV,E_imag_MeV,label,residual\n";
    const auto old = os.precision(12);
    for (std::size_t k = 0; k < spectrum.energies.size(); ++k) {
        const char* label = k < spectrum.labels.size() ? to_string(spectrum.labels[k]) : "";
        os << theta_deg << ',' << l << ',' << k << ',' << spectrum.energies[k].real() << ','
           << spectrum.energies[k].imag() << ',' << label << ',' << spectrum.residuals[k] << '\n';
    }
    os.precision(old);
}

}  // namespace qres::hamiltonian
