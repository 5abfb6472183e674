#include "levylab/fundamental_solution.hpp"

#include "levylab/errors.hpp"
#include "levylab/special_functions.hpp"

#include <algorithm>
#include <cmath>

namespace levylab::fs {

namespace {

constexpr double kExpUnderflow = -745.0;

void check_args(double t, int dim) {
    if (dim < 1 || dim > 3) throw DomainError("fundamental solution: dim must be 1, 2 or 3");
    if (t <= 0.0) throw DomainError("fundamental solution: t must be positive");
}

} // namespace

double bessel_density(double r, double t, int dim, const quad::QuadratureSpec& spec) {
    check_args(t, dim);
    if (r < 0.0) throw DomainError("bessel_density: r must be nonnegative");
    const double n2 = 0.5 * dim;

    if (r == 0.0) {
        if (t <= n2)
            throw DomainError("bessel_density: singular at r = 0 unless t > dim/2");
        return std::pow(4.0 * M_PI, -n2) * std::exp(sf::log_gamma(t - n2) - sf::log_gamma(t));
    }

    //   H_t(r) = (4 pi)^{-N/2} / Gamma(t) int_0^inf s^{t-N/2-1} e^{-s - r^2/(4s)} ds
    // with the exponent minimized at s0 = r/2, value r. Pull exp(-r) out and
    // split there; the left half runs in u = log s so the power-law endpoint
    // behaves.
    const double s0 = 0.5 * r;
    const double u0 = std::log(s0);
    const double a = t - n2;

    // For t < N/2 the integral is dominated by the barrier region s ~ r^2/4
    // (that is where the r^{2t-N} singularity comes from), so the left
    // window must reach below it, not just below s0.
    if ((2.0 * t - dim) * std::log(r) > 700.0)
        throw NumericsError("bessel_density: value overflows near r = 0");
    auto left = [&](double u) {
        const double s = std::exp(u);
        const double ex = a * u - (s + 0.25 * r * r / s - r);
        return ex < kExpUnderflow ? 0.0 : std::exp(ex);
    };
    const double u_low = std::min(u0 - 80.0, std::log(0.25 * r * r) - 9.0);
    const double lval = quad::integrate(left, u_low, u0, spec).value;

    // Right half in log coordinates as well; for small r it is a power law
    // over many decades before the e^{-s} cutoff. Capped where the exponent
    // has underflowed.
    auto right = [&](double u) {
        const double s = std::exp(u);
        const double ex = a * u - (s + 0.25 * r * r / s - r);
        return ex < kExpUnderflow ? 0.0 : std::exp(ex);
    };
    const double u_cap = std::log(800.0 + r + 10.0 * std::fabs(a));
    const double rval = quad::integrate(right, u0, u_cap, spec).value;

    return std::pow(4.0 * M_PI, -n2) * std::exp(-r - sf::log_gamma(t)) * (lval + rval);
}

double riesz_density(double r, double t, int dim) {
    check_args(t, dim);
    if (t >= 0.5 * dim) throw DomainError("riesz_density: requires t < dim/2");
    if (r <= 0.0) throw DomainError("riesz_density: r must be positive");
    const double n2 = 0.5 * dim;
    const double coeff =
        std::exp(sf::log_gamma(n2 - t) - sf::log_gamma(t) - t * std::log(4.0)) /
        std::pow(M_PI, n2);
    return coeff * std::pow(r, 2.0 * t - dim);
}

double heat_kernel(double r, double tau, int dim) {
    if (dim < 1 || dim > 3) throw DomainError("heat_kernel: dim must be 1, 2 or 3");
    if (tau <= 0.0) throw DomainError("heat_kernel: tau must be positive");
    const double ex = -0.25 * r * r / tau;
    return std::pow(4.0 * M_PI * tau, -0.5 * dim) * (ex < kExpUnderflow ? 0.0 : std::exp(ex));
}

double subordination_weight(double tau, double t) {
    if (t <= 0.0) throw DomainError("subordination_weight: t must be positive");
    if (tau <= 0.0) throw DomainError("subordination_weight: tau must be positive");
    const double ex = (t - 1.0) * std::log(tau) - tau - sf::log_gamma(t);
    return ex < kExpUnderflow ? 0.0 : std::exp(ex);
}

double bessel_density_subordinated(double r, double t, int dim,
                                   const quad::QuadratureSpec& spec) {
    check_args(t, dim);
    if (r <= 0.0) throw DomainError("bessel_density_subordinated: r must be positive");
    auto f = [&](double tau) {
        if (tau <= 0.0) return 0.0;
        return heat_kernel(r, tau, dim) * subordination_weight(tau, t);
    };
    const double split = std::max(1.0, r);
    return quad::integrate(f, 0.0, split, spec).value +
           quad::integrate_upper(f, split, spec).value;
}

Profile radial_profile(PotentialFamily family, double t, int dim, const ProfileSpec& ps,
                       const quad::QuadratureSpec& spec) {
    check_args(t, dim);
    if (ps.npoints < 2 || ps.rmin <= 0.0 || ps.rmax <= ps.rmin)
        throw DomainError("radial_profile: need 0 < rmin < rmax and npoints >= 2");
    Profile p;
    p.r.resize(ps.npoints);
    p.value.resize(ps.npoints);
    const double lstep = std::log(ps.rmax / ps.rmin) / (ps.npoints - 1);
    for (int i = 0; i < ps.npoints; ++i) {
        const double r = ps.rmin * std::exp(i * lstep);
        p.r[i] = r;
        p.value[i] = family == PotentialFamily::bessel ? bessel_density(r, t, dim, spec)
                                                       : riesz_density(r, t, dim);
    }
    return p;
}

double level_set_radius(const Profile& profile, double lambda) {
    const auto n = profile.r.size();
    if (n < 2) throw DomainError("level_set_radius: profile too short");
    if (lambda <= 0.0) throw DomainError("level_set_radius: lambda must be positive");
    const auto& v = profile.value;
    if (lambda > v.front() || lambda < v.back())
        throw DomainError("level_set_radius: lambda outside the sampled range");

    // Values decrease with r; find the bracketing pair and interpolate in
    // log-log coordinates.
    auto it = std::lower_bound(v.begin(), v.end(), lambda, std::greater<double>());
    if (it == v.begin()) return profile.r.front();
    const auto i = static_cast<std::size_t>(it - v.begin());
    const double lv0 = std::log(v[i - 1]);
    const double lv1 = std::log(v[i]);
    const double w = (std::log(lambda) - lv0) / (lv1 - lv0);
    return std::exp((1.0 - w) * std::log(profile.r[i - 1]) + w * std::log(profile.r[i]));
}

double weak_norm(PotentialFamily family, double t, int dim) {
    check_args(t, dim);
    const double n2 = 0.5 * dim;
    if (t >= n2) throw DomainError("weak_norm: requires t < dim/2");
    const double expo = (dim - 2.0 * t) / dim;
    const double ball = sf::sphere_area(dim) / dim;
    if (family == PotentialFamily::riesz) {
        // lambda |{R > lambda}|^{(N-2t)/N} is constant in lambda.
        const double coeff = riesz_density(1.0, t, dim);
        return coeff * std::pow(ball, expo);
    }
    // Bessel branch: H_t(r) / R_t(r) -> 1 as r -> 0 and the level-set
    // functional is increasing toward that limit, so the supremum equals the
    // Riesz constant.
    const double coeff =
        std::exp(sf::log_gamma(n2 - t) - sf::log_gamma(t) - t * std::log(4.0)) /
        std::pow(M_PI, n2);
    return coeff * std::pow(ball, expo);
}

double weak_norm_estimate(const Profile& profile, double t, int dim) {
    check_args(t, dim);
    if (t >= 0.5 * dim) throw DomainError("weak_norm_estimate: requires t < dim/2");
    if (profile.r.size() != profile.value.size() || profile.r.empty())
        throw DomainError("weak_norm_estimate: malformed profile");
    const double expo = (dim - 2.0 * t) / dim;
    const double ball = sf::sphere_area(dim) / dim;
    double best = 0.0;
    for (std::size_t i = 0; i < profile.r.size(); ++i) {
        const double measure = ball * std::pow(profile.r[i], dim);
        best = std::max(best, profile.value[i] * std::pow(measure, expo));
    }
    return best;
}

} // namespace levylab::fs
