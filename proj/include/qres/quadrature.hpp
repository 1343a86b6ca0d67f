#pragma once

#include <vector>

namespace qres::quad {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

Rule gauss_legendre(int n);

/// Composite Gauss-Legendre grid on [0, r_cut]: one panel [0, r_inner] then
/// geometrically growing panels (ratio `growth`) up to r_cut.
struct RadialGrid {
    std::vector<double> r;
    std::vector<double> w;

    std::size_t size() const { return r.size(); }
};

RadialGrid radial_grid(double r_inner, double r_cut, double growth, int order);

/// The same panel layout with every panel split in two, for convergence checks.
RadialGrid refine(double r_inner, double r_cut, double growth, int order);

}  // namespace qres::quad
