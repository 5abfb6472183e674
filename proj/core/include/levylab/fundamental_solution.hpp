#pragma once

#include "levylab/quadrature.hpp"

#include <vector>

namespace levylab::fs {

/// Radial density H_t(|z|) of the operator (I - Delta)^{-t}, computed by
/// adaptive quadrature of its subordination integral (split at the Laplace
/// point, exp(-r) extracted). r = 0 is finite only for t > dim/2.
double bessel_density(double r, double t, int dim, const quad::QuadratureSpec& spec = {});

/// Radial density of (-Delta)^{-t}: r^{2t-N} Gamma(N/2-t) / (4^t pi^{N/2}
/// Gamma(t)); requires 0 < t < dim/2 and r > 0. Small-r model for H_t.
double riesz_density(double r, double t, int dim);

/// Gaussian heat kernel (4 pi tau)^{-N/2} exp(-r^2 / (4 tau)).
double heat_kernel(double r, double tau, int dim);

/// Gamma(t, 1) subordination weight tau^{t-1} e^{-tau} / Gamma(t).
double subordination_weight(double tau, double t);

/// H_t(r) through the untransformed route int_0^inf G_tau(r) Psi_t(tau) dtau;
/// independent of bessel_density's change of variables, used for
/// cross-validation.
double bessel_density_subordinated(double r, double t, int dim,
                                   const quad::QuadratureSpec& spec = {});

enum class PotentialFamily { bessel, riesz };

struct ProfileSpec {
    double rmin = 1e-5;
    double rmax = 50.0;
    int npoints = 2048;
};

/// Log-spaced radial samples of a potential density; values are strictly
/// decreasing in r for both families.
struct Profile {
    std::vector<double> r;
    std::vector<double> value;
};

Profile radial_profile(PotentialFamily family, double t, int dim, const ProfileSpec& ps = {},
                       const quad::QuadratureSpec& spec = {});

/// Radius of the super-level set {H > lambda}, by piecewise-linear inversion
/// of the profile in log-log coordinates. DomainError outside the sampled
/// value range.
double level_set_radius(const Profile& profile, double lambda);

/// Closed-form weak L^{N/(N-2t)} quasinorm sup_lambda lambda |{H >
/// lambda}|^{(N-2t)/N}; the Riesz branch is constant in lambda and the
/// Bessel branch attains the same constant in the lambda -> inf limit, so
/// the two branches agree exactly.
double weak_norm(PotentialFamily family, double t, int dim);

/// Same quasinorm evaluated on a sampled profile (max over the sampled
/// level sets). Converges to weak_norm as rmin -> 0.
double weak_norm_estimate(const Profile& profile, double t, int dim);

} // namespace levylab::fs
