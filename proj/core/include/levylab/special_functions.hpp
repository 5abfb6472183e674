#pragma once

namespace levylab::sf {

inline constexpr double euler_gamma = 0.577215664901532860606512090082;

/// Gamma function for x > 0.
/// Relative error <= 1e-13 on [1e-3, 170].
/// Throws DomainError for x <= 0, NumericsError (overflow) for x > 170.
double gamma(double x);

/// log Gamma(x) for x > 0. Used to form ratios of large Gamma values
/// without overflow.
double log_gamma(double x);

/// Digamma psi = Gamma'/Gamma for x > 0, absolute error <= 1e-12.
double digamma(double x);

/// Surface measure of the unit sphere S^{dim-1} in R^dim:
/// sphere_area(1) = 2, sphere_area(2) = 2*pi, sphere_area(3) = 4*pi.
double sphere_area(int dim);

} // namespace levylab::sf
