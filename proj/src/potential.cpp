#include "qres/potential.hpp"

#include <cmath>

#include "qres/special.hpp"

namespace qres::hamiltonian {

PotentialModel PotentialModel::schematic() {
    PotentialModel m;
    m.kind = PotentialKind::Schematic;
    m.hbar2_over_2mu = 0.5;
    return m;
}

PotentialModel PotentialModel::alpha_alpha() {
    PotentialModel m;
    m.kind = PotentialKind::AlphaAlpha;
    m.hbar2_over_2mu = 10.368;
    return m;
}

void PotentialModel::validate() const {
    if (!(hbar2_over_2mu > 0.0)) throw InputError("potential: hbar2_over_2mu must be positive");
    if (kind == PotentialKind::AlphaAlpha && !(beta > 0.0)) throw InputError("potential: beta must be positive");
}

Complex eval_potential(const PotentialModel& model, Complex r) {
    const double mag = std::abs(r);
    if (mag > 0.0 && std::abs(std::arg(r)) >= kPi / 4.0) {
        throw InputError("eval_potential: |theta| must stay below 45 degrees");
    }
    const Complex r2 = r * r;
    if (model.kind == PotentialKind::Schematic) {
        return -8.0 * std::exp(-0.16 * r2) + 4.0 * std::exp(-0.04 * r2);
    }
    const Complex nuclear = model.v0 * std::exp(-model.k * r2);
    const double charge = model.z1 * model.z2 * model.e2;
    const Complex br = model.beta * r;
    Complex coulomb;
    if (mag * model.beta < 1e-6) {
        // erf(x)/x = 2/sqrt(pi) (1 - x^2/3 + ...)
        coulomb = charge * model.beta * (2.0 / std::sqrt(kPi)) * (1.0 - br * br / 3.0);
    } else {
        coulomb = charge * special::erf(br) / r;
    }
    return nuclear + coulomb;
}

}  // namespace qres::hamiltonian
