#include "qres/special.hpp"

#include <cmath>

namespace qres::special {
namespace {

constexpr double kTwoOverSqrtPi = 1.12837916709551257390;
constexpr double kInvSqrtPi = 0.56418958354775628695;

// Maclaurin series, summed in long double. For |z| < 3 the largest term is
// about e^{|z|^2} ~ 1e4, leaving ~15 significant digits after cancellation.
Complex erf_series(Complex z) {
    using LC = std::complex<long double>;
    const LC zz(z.real(), z.imag());
    const LC z2 = zz * zz;
    LC term = zz;  // (-1)^n z^{2n+1} / n!
    LC sum = zz;
    for (int n = 1; n < 200; ++n) {
        term *= -z2 / static_cast<long double>(n);
        const LC add = term / static_cast<long double>(2 * n + 1);
        sum += add;
        if (std::abs(add) < 1e-21L * std::abs(sum)) break;
    }
    const LC r = sum * static_cast<long double>(kTwoOverSqrtPi);
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

// erfc(z) = e^{-z^2}/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
// evaluated with the modified Lentz algorithm; valid for Re z > 0.
Complex erfc_continued_fraction(Complex z) {
    constexpr double tiny = 1e-300;
    Complex f = z;
    Complex c = f;
    Complex d = 0.0;
    for (int k = 1; k < 5000; ++k) {
        const double a = 0.5 * k;
        d = z + a * d;
        if (std::abs(d) < tiny) d = tiny;
        c = z + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const Complex delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-z * z) * kInvSqrtPi / f;
}

}  // namespace

Complex erf(Complex z) {
    if (z.real() < 0.0) return -erf(-z);
    if (std::abs(z) < 3.0) return erf_series(z);
    return 1.0 - erfc_continued_fraction(z);
}

double laguerre(int n, double alpha, double x) {
    if (n < 0) throw InputError("laguerre: negative degree");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace qres::special
