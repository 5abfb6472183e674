#pragma once

#include "levylab/grid.hpp"
#include "levylab/kernel_stepper.hpp"
#include "levylab/kernels.hpp"
#include "levylab/symbols.hpp"

#include <functional>
#include <string>

namespace levylab::fn {

using DirichletFormHandle =
    std::function<double(const grid::ScalarField&, const grid::ScalarField&)>;

/// Constant pair of a p-log-Sobolev inequality
///   Ent(|f|^p) <= C(p) ||f||_p^p + D(p) E(|f|^{p-2} f, f),
/// with C, D evaluable on [2, inf) and D > 0.
struct LogSobFamily {
    std::string name;
    std::function<double(double)> C;
    std::function<double(double)> D;
};

/// Ent(|f|^p) = sum Phi(|f_i|^p) h^N - Phi(sum |f_i|^p h^N), Phi(s) = s log s
/// with the 0 log 0 = 0 convention.
double entropy(const grid::ScalarField& f, double p);

/// (1/L^N) sum_k m(|xi_k|) Re(fhat_k conj(ghat_k)); spectrally exact on the
/// grid. Rejects non-Levy symbols.
double dirichlet_form_fourier(const ops::LevySymbol& symbol, const grid::ScalarField& f,
                              const grid::ScalarField& g);

/// (1/2) sum_i sum_{j!=i} (f_i - f_j)(g_i - g_j) J(x_i, x_j) h^{2N} with
/// periodic distance, truncated exactly as the kernel stepper truncates.
double dirichlet_form_kernel(const ops::RadialKernel& kernel, const grid::ScalarField& f,
                             const grid::ScalarField& g,
                             const stepper::StepperOptions& opt = {});
double dirichlet_form_kernel(const ops::GeneralKernel& kernel, const grid::ScalarField& f,
                             const grid::ScalarField& g,
                             const stepper::StepperOptions& opt = {});

/// Reusable handles; the kernel variants precompute stepper weights once.
DirichletFormHandle fourier_form(const ops::LevySymbol& symbol);
DirichletFormHandle kernel_form(const ops::RadialKernel& kernel, const grid::TorusGrid& g,
                                const stepper::StepperOptions& opt = {});
DirichletFormHandle kernel_form(const ops::GeneralKernel& kernel, const grid::TorusGrid& g,
                                const stepper::StepperOptions& opt = {});

/// Ent(|f|^p) - C(p) ||f||_p^p - D(p) E(|f|^{p-2} f, f); the inequality
/// holds iff the residual is <= 0.
double plog_sobolev_residual(const grid::ScalarField& f, double p, const LogSobFamily& fam,
                             const DirichletFormHandle& form);

/// (p^2/(4(p-1))) E(f^{p-1}, f) - E(f^{p/2}, f^{p/2}) for f >= 0; the
/// inequality is pointwise in the kernel double sum, so the gap is
/// nonnegative up to roundoff for any admissible input.
double stroock_varopoulos_gap(const grid::ScalarField& f, double p,
                              const DirichletFormHandle& form);

/// Mismatch between the centered finite difference of t -> int u(t)^{q(t)}
/// and its analytic derivative
///   (q'/q) [Ent(u^q) + U log U] - q E(u^{q-1}, u),  U = int u^q,
/// assembled at time t from entropy and the Fourier form. Second order in
/// delta. Requires strictly positive data.
double ddt_identity_check(const ops::LevySymbol& symbol, const grid::ScalarField& u0,
                          const std::function<double(double)>& q, double t,
                          double delta = 1e-3);

} // namespace levylab::fn
