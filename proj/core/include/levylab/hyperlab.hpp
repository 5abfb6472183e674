#pragma once

#include "levylab/functionals.hpp"
#include "levylab/grid.hpp"
#include "levylab/kernels.hpp"
#include "levylab/quadrature.hpp"
#include "levylab/symbols.hpp"

#include <functional>
#include <string>
#include <vector>

namespace levylab::hyper {

/// Adaptive-RK trajectory of the exponent ODE q' = q^2 / D(q), q(0) = p,
/// halted at t_end or when q reaches q_max (blow-up detected).
struct QTrace {
    std::vector<double> t;
    std::vector<double> q;
    bool blew_up = false;
};

QTrace q_ode_solve(const std::function<double(double)>& D, double p, double t_end,
                   double q_max = 1e4);

/// q(t) along the exponent ODE; DomainError if q passes q_max first.
double q_of_t(const std::function<double(double)>& D, double p, double t, double q_max = 1e4);

enum class TailClass { convergent, divergent, inconclusive };

struct TailProbe {
    TailClass cls;
    /// Total integral (tail extrapolated geometrically) when convergent;
    /// +infinity when divergent; NaN when inconclusive.
    double value;
};

/// Classifies int_a^inf f dx from quadratures over geometrically growing
/// windows and the trend of their ratios; "inconclusive" is a first-class
/// outcome.
TailProbe improper_tail_probe(const std::function<double(double)>& f, double a,
                              int max_doublings = 48, const quad::QuadratureSpec& spec = {});

/// Osgood time t_inf = int_p^inf D(alpha)/alpha^2 dalpha; +infinity when the
/// integral diverges; InconclusiveError when the tail cannot be classified.
double blowup_time(const std::function<double(double)>& D, double p);

/// Hypercontractivity constant for the log(I - Delta) flow: the sharp
/// closed form at p = 2, the weak-Young product bound otherwise; equals 1
/// at t = 0 by its analytic limit. Domain 0 <= t < dim/(2p), p > 1.
double A_p_bound(double p, double t, int dim);

/// Closed-form d/dt A_p(t)|_{t=0}; grows like (2/dim)(p - log p).
double A_p_prime_zero(double p, int dim);

struct GrossConstants {
    double C;
    double D;
};

/// (C, D) = (p^2 A'(0)/q'(0), p^2/q'(0)) with both derivatives estimated by
/// one-sided fourth-order differences at 0 (step 1e-3). Degenerate error if
/// q'(0) <= 0.
GrossConstants gross_forward(const std::function<double(double)>& A,
                             const std::function<double(double)>& q, double p);

/// A~_p(t) = exp(int_p^{q(t)} C(alpha)/alpha^2 dalpha) with q(t) from the
/// family's exponent ODE.
double gross_backward(const fn::LogSobFamily& fam, double p, double t, double q_max = 1e4);

/// The constant family of log(I - Delta): C(p) = (dim/2) A'_p(0),
/// D(p) = dim/2.
fn::LogSobFamily log_iminus_delta_family(int dim);

/// beta(eps) = (1 - 2/q)^{-1} log(B(eps (1 - 2/q), q)), q > 2.
double super_beta(const std::function<double(double, double)>& B, double q, double eps);

/// M(t) = (1/t) int_0^t beta(s) ds; NumericsError when the integral fails
/// to converge.
double ultra_M(const std::function<double(double)>& beta, double t,
               const quad::QuadratureSpec& spec = {});

struct HyperSample {
    double t;
    double q;
    double norm;   // ||u(t)||_{q(t)}
    double bound;  // A_p(t) ||u0||_p
    double ratio;  // norm / bound
};

struct HyperTrace {
    std::string symbol_name;
    double p = 2.0;
    grid::TorusGrid grid;
    std::vector<HyperSample> samples;
};

/// Evolves u0 spectrally and compares ||u(t)||_{q(t)} against the
/// hypercontractive bound: A_p_bound for the log_bessel symbol,
/// gross_backward for a generic family. Escalates to an error when more
/// than 1% of the field's mass sits in the boundary band (outside the
/// centered 3/4-box).
HyperTrace run_hyper_experiment(const ops::LevySymbol& symbol, const grid::ScalarField& u0,
                                double p, const std::vector<double>& times,
                                const fn::LogSobFamily& fam);

enum class KernelClass { ultracontractive, strong_hyper_eventual_ultra, not_eventually_ultra };

struct ClassifyOptions {
    int k_min = 4;
    int k_max = 24;
    int tail_window = 8;
    bool fourier_probe = true;
};

struct ClassifyEvidence {
    KernelClass verdict;
    std::vector<double> r;    // probe radii 2^{-k}
    std::vector<double> ell;  // kernel profile at the probes
    double slope;             // d log ell / d log(1/r) over the tail window
    double rel_span;          // relative spread of ell over the tail window
    double fourier_exponent_t1;
    double fourier_exponent_t2;
};

/// Trichotomy by the small-r limit of ell (infinity / positive constant /
/// zero), probed on dyadic radii, with the Fourier decay exponents of
/// e^{-t m} at t = 1, 2 as corroborating evidence. InconclusiveError when
/// the probes cannot be classified.
ClassifyEvidence classify_kernel_threshold(const ops::RadialKernel& kernel,
                                           const ClassifyOptions& opt = {});

/// Least-squares slope of t * m(xi) against log xi over a log-spaced grid:
/// the fitted polynomial decay exponent of e^{-t m(xi)}.
double fourier_decay_exponent(const ops::RadialKernel& kernel, double t, double xi_min = 1e2,
                              double xi_max = 1e4, int npoints = 17);

} // namespace levylab::hyper
