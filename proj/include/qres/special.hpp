#pragma once

#include "qres/common.hpp"

namespace qres::special {

/// Error function of a complex argument, accurate to ~1e-13 relative for
/// Re(z) >= 0 and |arg z| <= 45 degrees (the strip complex scaling needs).
/// Odd symmetry extends it to the left half plane.
Complex erf(Complex z);

/// Generalized Laguerre polynomial L_n^{(alpha)}(x) by upward recurrence.
double laguerre(int n, double alpha, double x);

}  // namespace qres::special
