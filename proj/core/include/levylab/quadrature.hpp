#pragma once

#include <functional>

namespace levylab::quad {

/// Tolerances and limits for adaptive quadrature.
struct QuadratureSpec {
    double rel_tol = 1e-9;
    double abs_tol = 0.0;
    int max_subdivisions = 1 << 15;
    /// Integrand builders may truncate where the integrand falls below
    /// this fraction of its peak.
    double peak_cutoff = 1e-16;
};

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;
};

using Integrand = std::function<double(double)>;

/// Adaptive Gauss-Kronrod integration of f over [a, b].
/// Handles integrable endpoint singularities. Throws NumericsError when the
/// requested tolerance cannot be met.
QuadResult integrate(const Integrand& f, double a, double b,
                     const QuadratureSpec& spec = {});

/// Adaptive integration of f over [a, +inf).
QuadResult integrate_upper(const Integrand& f, double a,
                           const QuadratureSpec& spec = {});

} // namespace levylab::quad
