#pragma once

#include <functional>
#include <string>

namespace levylab::ops {

/// Radial Fourier multiplier m(|xi|) of a translation-invariant operator.
/// is_levy marks symbols of genuine Levy operators: m(0) = 0, m >= 0, and
/// C1*min{1,r^2} <= m(r) <= C2*max{1,r^2} for some finite C1, C2 > 0.
/// The log-Riesz symbol log(r^2) is negative near 0 and carries
/// is_levy = false.
struct LevySymbol {
    std::string name;
    int dim = 1;
    bool is_levy = true;
    std::function<double(double)> eval;
};

/// Built-in symbols:
///   "laplacian"            m(r) = r^2
///   "fractional"           m(r) = r^sigma,        sigma in (0,2)
///   "log_bessel"           m(r) = log(1 + r^2)    [log(I - Delta)]
///   "log_riesz"            m(r) = log(r^2), m(0) := 0, is_levy = false
///   "zero_order_gaussian"  m(r) = 1 - exp(-r^2)   [J = unit-mass Gaussian]
LevySymbol builtin_symbol(const std::string& kind, int dim, double sigma = 0.0);

/// Empirical sandwich constants over a log-spaced sample grid:
/// c_lower = min m(r)/min{1,r^2}, c_upper = max m(r)/max{1,r^2}.
struct SandwichConstants {
    double c_lower;
    double c_upper;
};
SandwichConstants sandwich_constants(const LevySymbol& symbol, double rmin,
                                     double rmax, int npoints);

} // namespace levylab::ops
