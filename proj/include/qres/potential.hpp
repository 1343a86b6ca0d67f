#pragma once

#include "qres/common.hpp"

namespace qres::hamiltonian {

enum class PotentialKind { Schematic, AlphaAlpha };

/// Two-body potential plus the kinetic prefactor hbar^2/(2 mu).
/// Energies in MeV, lengths in fm.
struct PotentialModel {
    PotentialKind kind = PotentialKind::Schematic;
    double v0 = -122.6225;
    double k = 0.22;
    double beta = 0.75;
    int z1 = 2;
    int z2 = 2;
    double e2 = 1.43996;
    double hbar2_over_2mu = 0.5;

    /// -8 exp(-0.16 r^2) + 4 exp(-0.04 r^2) with H = -1/2 nabla^2 + V.
    static PotentialModel schematic();
    /// Gaussian nuclear term plus erf-screened Coulomb; hbar^2/(2 mu) with
    /// mu = 2 m_N and hbar^2/(2 m_N) = 20.736 MeV fm^2.
    static PotentialModel alpha_alpha();

    void validate() const;
};

/// V(r) for complex r = |r| e^{i theta}; rejects |theta| >= 45 degrees.
Complex eval_potential(const PotentialModel& model, Complex r);

}  // namespace qres::hamiltonian
