#pragma once

#include <functional>
#include <limits>
#include <string>

#include "qres/common.hpp"

namespace qres::opt {

using Objective = std::function<double(const RVector&)>;
/// Fills g with the gradient at x; fx is the objective value already known at x.
using GradientFn = std::function<void(const RVector& x, double fx, RVector& g)>;

struct BfgsOptions {
    double grad_tol = 1e-8;
    int max_iterations = 2000;
    /// Stop as soon as f drops below this value.
    double f_target = -std::numeric_limits<double>::infinity();
    /// Relative objective decrease below which consecutive iterations count as stalled.
    double stall_tol = 1e-15;
    int stall_iterations = 10;
    double c1 = 1e-4;
    double c2 = 0.9;
    int max_line_evaluations = 40;
};

struct BfgsResult {
    RVector x;
    double f = 0.0;
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
    std::string reason;
};

/// Quasi-Newton minimization with inverse-Hessian BFGS updates and a strong
/// Wolfe line search. Updates that violate the curvature condition are skipped.
BfgsResult minimize_bfgs(const Objective& f, const GradientFn& grad, RVector x0, const BfgsOptions& options = {});

enum class Difference { Central, Forward };

/// Finite-difference gradient with a uniform step.
void finite_difference_gradient(const Objective& f, const RVector& x, double fx, double step, Difference scheme,
                                RVector& g);

}  // namespace qres::opt
