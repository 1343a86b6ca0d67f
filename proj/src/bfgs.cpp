#include "qres/bfgs.hpp"

#include <cmath>

namespace qres::opt {
namespace {

struct Probe {
    double alpha;
    double f;
    double slope;
    RVector g;
};

// Cubic-free safeguarded interpolation: quadratic fit on (lo, hi), clamped to
// the middle of the bracket.
double interpolate(const Probe& lo, const Probe& hi) {
    const double d = hi.alpha - lo.alpha;
    const double denom = 2.0 * (hi.f - lo.f - lo.slope * d);
    double a = lo.alpha + 0.5 * d;
    if (denom > 0.0) a = lo.alpha - lo.slope * d * d / denom;
    const double lo_b = std::min(lo.alpha, hi.alpha);
    const double hi_b = std::max(lo.alpha, hi.alpha);
    const double margin = 0.1 * (hi_b - lo_b);
    return std::clamp(a, lo_b + margin, hi_b - margin);
}

}  // namespace

void finite_difference_gradient(const Objective& f, const RVector& x, double fx, double step, Difference scheme,
                                RVector& g) {
    g.resize(x.size());
    RVector xp = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        xp[i] = xi + step;
        const double fp = f(xp);
        if (scheme == Difference::Central) {
            xp[i] = xi - step;
            const double fm = f(xp);
            g[i] = (fp - fm) / (2.0 * step);
        } else {
            g[i] = (fp - fx) / step;
        }
        xp[i] = xi;
    }
}

BfgsResult minimize_bfgs(const Objective& f, const GradientFn& grad, RVector x0, const BfgsOptions& opt) {
    const auto n = x0.size();
    BfgsResult res;
    res.x = std::move(x0);
    res.f = f(res.x);
    res.evaluations = 1;
    if (!std::isfinite(res.f)) {
        res.reason = "objective not finite at the starting point";
        return res;
    }
    RVector g(n);
    grad(res.x, res.f, g);
    RMatrix hinv = RMatrix::Identity(n, n);
    int stalled = 0;

    auto evaluate = [&](double alpha, const RVector& dir) {
        Probe p{alpha, 0.0, 0.0, RVector(n)};
        const RVector xa = res.x + alpha * dir;
        p.f = f(xa);
        ++res.evaluations;
        if (std::isfinite(p.f)) {
            grad(xa, p.f, p.g);
            p.slope = p.g.dot(dir);
        }
        return p;
    };

    for (res.iterations = 0; res.iterations < opt.max_iterations; ++res.iterations) {
        if (res.f < opt.f_target) {
            res.converged = true;
            res.reason = "objective below target";
            return res;
        }
        if (g.norm() < opt.grad_tol) {
            res.converged = true;
            res.reason = "gradient norm below tolerance";
            return res;
        }
        RVector dir = -hinv * g;
        double slope0 = g.dot(dir);
        if (!(slope0 < 0.0)) {
            hinv.setIdentity();
            dir = -g;
            slope0 = -g.squaredNorm();
        }
        const Probe start{0.0, res.f, slope0, g};

        // Strong Wolfe search: bracket, then zoom.
        Probe prev = start;
        Probe accepted{};
        bool found = false;
        double alpha = res.iterations == 0 ? std::min(1.0, 1.0 / std::max(g.norm(), 1e-300)) : 1.0;
        int used = 0;
        auto zoom = [&](Probe lo, Probe hi) {
            while (used < opt.max_line_evaluations) {
                const Probe p = evaluate(interpolate(lo, hi), dir);
                ++used;
                if (!std::isfinite(p.f) || p.f > res.f + opt.c1 * p.alpha * slope0 || p.f >= lo.f) {
                    hi = p;
                } else {
                    if (std::abs(p.slope) <= -opt.c2 * slope0) {
                        accepted = p;
                        found = true;
                        return;
                    }
                    if (p.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
                    lo = p;
                }
                if (std::abs(hi.alpha - lo.alpha) < 1e-16 * std::max(1.0, lo.alpha)) break;
            }
            // Settle for sufficient decrease without the curvature condition.
            if (lo.alpha > 0.0 && lo.f < res.f) {
                accepted = lo;
                found = true;
            }
        };
        while (used < opt.max_line_evaluations) {
            const Probe p = evaluate(alpha, dir);
            ++used;
            if (!std::isfinite(p.f) || p.f > res.f + opt.c1 * alpha * slope0 || (used > 1 && p.f >= prev.f)) {
                zoom(prev, p);
                break;
            }
            if (std::abs(p.slope) <= -opt.c2 * slope0) {
                accepted = p;
                found = true;
                break;
            }
            if (p.slope >= 0.0) {
                zoom(p, prev);
                break;
            }
            prev = p;
            alpha *= 2.0;
        }
        if (!found) {
            if (hinv.isIdentity()) {
                res.reason = "line search failed along the steepest-descent direction";
                return res;
            }
            hinv.setIdentity();
            continue;
        }

        const RVector s = accepted.alpha * dir;
        const RVector y = accepted.g - g;
        const double decrease = res.f - accepted.f;
        res.x += s;
        res.f = accepted.f;
        g = accepted.g;
        stalled = decrease <= opt.stall_tol * std::max(std::abs(res.f), 1e-300) ? stalled + 1 : 0;
        if (stalled >= opt.stall_iterations) {
            res.reason = "objective stalled";
            return res;
        }
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            const double rho = 1.0 / sy;
            const RVector hy = hinv * y;
            hinv += rho * ((1.0 + rho * y.dot(hy)) * (s * s.transpose()) - (hy * s.transpose() + s * hy.transpose()));
        }
    }
    res.reason = "iteration limit reached";
    return res;
}

}  // namespace qres::opt
