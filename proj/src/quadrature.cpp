#include "qres/quadrature.hpp"

#include <cmath>

#include "qres/common.hpp"

namespace qres::quad {

Rule gauss_legendre(int n) {
    if (n < 1) throw InputError("gauss_legendre: need at least one node");
    if (n == 1) return {{0.0}, {2.0}};
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

namespace {

std::vector<double> panel_edges(double r_inner, double r_cut, double growth) {
    if (!(r_inner > 0.0) || !(r_cut > r_inner) || !(growth > 1.0))
        throw InputError("radial_grid: need 0 < r_inner < r_cut and growth > 1");
    std::vector<double> edges{0.0, r_inner};
    double edge = r_inner;
    while (edge * growth < r_cut) {
        edge *= growth;
        edges.push_back(edge);
    }
    edges.push_back(r_cut);
    return edges;
}

RadialGrid fill(const std::vector<double>& edges, int order) {
    const Rule rule = gauss_legendre(order);
    RadialGrid grid;
    grid.r.reserve((edges.size() - 1) * order);
    grid.w.reserve((edges.size() - 1) * order);
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double half = 0.5 * (edges[p + 1] - edges[p]);
        const double mid = 0.5 * (edges[p + 1] + edges[p]);
        for (int k = 0; k < order; ++k) {
            grid.r.push_back(mid + half * rule.nodes[k]);
            grid.w.push_back(half * rule.weights[k]);
        }
    }
    return grid;
}

}  // namespace

RadialGrid radial_grid(double r_inner, double r_cut, double growth, int order) {
    return fill(panel_edges(r_inner, r_cut, growth), order);
}

RadialGrid refine(double r_inner, double r_cut, double growth, int order) {
    const auto coarse = panel_edges(r_inner, r_cut, growth);
    std::vector<double> edges;
    for (std::size_t p = 0; p + 1 < coarse.size(); ++p) {
        edges.push_back(coarse[p]);
        edges.push_back(0.5 * (coarse[p] + coarse[p + 1]));
    }
    edges.push_back(coarse.back());
    return fill(edges, order);
}

}  // namespace qres::quad
