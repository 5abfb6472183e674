#pragma once

#include "levylab/quadrature.hpp"

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace levylab::ops {

/// Radial Levy kernel J(z) = ell(|z|) * |z|^{-N}; ell >= 0.
/// cutoff marks compact support (ell = 0 beyond it); infinity otherwise.
struct RadialKernel {
    std::string name;
    int dim = 1;
    std::function<double(double)> ell;
    double cutoff = std::numeric_limits<double>::infinity();

    /// J(z) at |z| = r.
    double density(double r) const;
};

/// General symmetric nonnegative kernel J(x,y). Coordinates are absolute
/// grid positions; translation-invariant instances are expected to reduce
/// the pair to a (wrapped) displacement themselves.
struct GeneralKernel {
    std::string name;
    int dim = 1;
    std::function<double(const std::array<double, 3>&, const std::array<double, 3>&)> eval;
};

/// Pointwise J_log(r): the kernel of log(I - Delta), evaluated by adaptive
/// quadrature of its subordination integral, split at the Laplace critical
/// point with the exp(-r) factor extracted. Relative error <= 1e-8 for
/// r in [1e-4, 30].
double kernel_log(double r, int dim, const quad::QuadratureSpec& spec = {});

/// J_log as a RadialKernel backed by a dense log-spaced table (built once
/// per dimension, then interpolated log-log). Fast path for steppers,
/// Dirichlet forms and symbol quadratures; table accuracy ~1e-5 relative.
RadialKernel log_kernel(int dim);

/// C_{N,sigma} |z|^{-N-sigma}, normalized so the symbol is exactly r^sigma.
RadialKernel fractional_kernel(int dim, double sigma);

/// ell == 1 on (0, 1], zero beyond (near-zero-order model with a sharp
/// truncation).
RadialKernel truncated_kernel(int dim);

/// ell(r) = 1/log(e + 1/r) on (0, 1]: profile vanishing at the origin
/// slowly enough to destroy eventual ultracontractivity.
RadialKernel slow_log_kernel(int dim);

/// Unit-mass Gaussian kernel (4 pi)^{-N/2} exp(-|z|^2/4); bounded, zero
/// order, symbol 1 - exp(-r^2).
RadialKernel gaussian_kernel(int dim);

/// sup_x int J(x,y) min{1, |x-y|^2} dy for a radial kernel, by quadrature.
/// Throws DomainError when the near-origin integral diverges.
double levy_condition(const RadialKernel& kernel, const quad::QuadratureSpec& spec = {});

/// Levy-Khintchine symbol m(r) = int (1 - cos(z.xi)) J(z) dz at |xi| = r,
/// reduced to a 1-D radial integral (even cosine for N=1, Bessel J0 angular
/// average for N=2, sinc for N=3). Returns the value with the estimated
/// quadrature error.
quad::QuadResult levy_khintchine(const RadialKernel& kernel, double r,
                                 const quad::QuadratureSpec& spec = {});

/// psi1(r) = int_r^1 ell(s)/s ds for r in (0,1).
double psi1(const RadialKernel& kernel, double r, const quad::QuadratureSpec& spec = {});

/// psi2(r) = r^{-2} int_0^r s ell(s) ds.
double psi2(const RadialKernel& kernel, double r, const quad::QuadratureSpec& spec = {});

/// Empirical constants for the multiplier bound
/// m(xi) <= c1 psi1(1/|xi|) + c2 psi2(1/|xi|), |xi| > 1, fitted on a
/// log-spaced calibration grid (the bound then holds on that grid by
/// construction; no universal values are asserted).
struct MultiplierFit {
    double c1;
    double c2;
};
MultiplierFit fit_multiplier_bound(const RadialKernel& kernel, double xi_min,
                                   double xi_max, int npoints,
                                   const quad::QuadratureSpec& spec = {});

} // namespace levylab::ops
