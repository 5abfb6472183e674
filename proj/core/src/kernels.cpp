#include "levylab/kernels.hpp"

#include "levylab/errors.hpp"
#include "levylab/special_functions.hpp"

#include <gsl/gsl_sf_bessel.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace levylab::ops {

namespace {

constexpr double kExpUnderflow = -745.0;

double check_dim(int dim) {
    if (dim < 1 || dim > 3) throw DomainError("kernel: dim must be 1, 2 or 3");
    return dim;
}

/// ell with the compact-support cutoff applied.
double ell_at(const RadialKernel& k, double s) {
    if (s >= k.cutoff) return 0.0;
    return k.ell(s);
}

} // namespace

double RadialKernel::density(double r) const {
    if (r <= 0.0) throw DomainError("RadialKernel::density: r must be positive");
    if (r >= cutoff) return 0.0;
    return ell(r) * std::pow(r, -dim);
}

double kernel_log(double r, int dim, const quad::QuadratureSpec& spec) {
    check_dim(dim);
    if (r <= 0.0) throw DomainError("kernel_log: r must be positive");
    const double n2 = 0.5 * dim;

    // Subordination in the s = 1/(4t) variable:
    //   J(r) = (4 pi)^{-N/2} r^{-N} int_0^inf exp(-s r^2 - 1/(4s)) s^{-N/2-1} ds.
    // The exponent is minimized at s0 = 1/(2r) with value r; pull exp(-r) out
    // and split there so each half is a one-sided decay.
    const double s0 = 1.0 / (2.0 * r);

    // Left half in u = log s; the 1/(4s) barrier kills it past u ~ -8.
    const double u0 = std::log(s0);
    const double u_min = std::min(-9.0, u0 - 4.0);
    auto left = [&](double u) {
        const double s = std::exp(u);
        const double ex = -(s * r * r + 0.25 / s - r) - u * n2;
        return ex < kExpUnderflow ? 0.0 : std::exp(ex);
    };
    const double lval = quad::integrate(left, u_min, u0, spec).value;

    // Right half also in log coordinates: for small r the integrand is a
    // power law over many decades before the exp(-s r^2) cutoff, which
    // defeats the usual [s0, inf) transformation. The cap is where the
    // exponent alone has underflowed.
    auto right = [&](double u) {
        const double s = std::exp(u);
        const double ex = -(s * r * r + 0.25 / s - r) - u * n2;
        return ex < kExpUnderflow ? 0.0 : std::exp(ex);
    };
    const double u_cap = std::log((820.0 + r) / (r * r));
    const double rval = quad::integrate(right, u0, u_cap, spec).value;

    return std::pow(4.0 * M_PI, -n2) * std::pow(r, -dim) * std::exp(-r) * (lval + rval);
}

namespace {

/// Dense log-spaced table of ell_log(r) = r^N J_log(r), interpolated
/// log-log. J_log(80)/J_log(1) ~ 1e-35, so the table range is effectively
/// the whole support.
struct LogTable {
    double log_rmin;
    double inv_dlog;
    double rmin;
    double rmax;
    std::vector<double> log_ell;
};

const LogTable& log_table(int dim) {
    static std::mutex mtx;
    static std::map<int, LogTable> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(dim);
    if (it != cache.end()) return it->second;

    LogTable t;
    t.rmin = 1e-6;
    t.rmax = 80.0;
    const int n = 8192;
    t.log_rmin = std::log(t.rmin);
    const double dlog = (std::log(t.rmax) - t.log_rmin) / (n - 1);
    t.inv_dlog = 1.0 / dlog;
    t.log_ell.resize(n);
    quad::QuadratureSpec spec;
    spec.rel_tol = 1e-10;
    for (int i = 0; i < n; ++i) {
        const double r = std::exp(t.log_rmin + i * dlog);
        t.log_ell[i] = std::log(std::pow(r, dim) * kernel_log(r, dim, spec));
    }
    return cache.emplace(dim, std::move(t)).first->second;
}

} // namespace

RadialKernel log_kernel(int dim) {
    check_dim(dim);
    const LogTable& t = log_table(dim);
    RadialKernel k;
    k.name = "log";
    k.dim = dim;
    k.cutoff = t.rmax;
    k.ell = [&t](double r) {
        if (r <= t.rmin) return std::exp(t.log_ell.front());
        if (r >= t.rmax) return 0.0;
        const double x = (std::log(r) - t.log_rmin) * t.inv_dlog;
        const auto i = static_cast<std::size_t>(x);
        const double w = x - static_cast<double>(i);
        return std::exp((1.0 - w) * t.log_ell[i] + w * t.log_ell[i + 1]);
    };
    return k;
}

RadialKernel fractional_kernel(int dim, double sigma) {
    check_dim(dim);
    if (sigma <= 0.0 || sigma >= 2.0)
        throw DomainError("fractional_kernel: sigma must lie in (0, 2)");
    const double c = sigma * std::pow(2.0, sigma - 1.0) * sf::gamma(0.5 * (dim + sigma)) /
                     (std::pow(M_PI, 0.5 * dim) * sf::gamma(1.0 - 0.5 * sigma));
    RadialKernel k;
    k.name = "fractional_" + std::to_string(sigma);
    k.dim = dim;
    k.ell = [c, sigma](double r) { return c * std::pow(r, -sigma); };
    return k;
}

RadialKernel truncated_kernel(int dim) {
    check_dim(dim);
    RadialKernel k;
    k.name = "truncated";
    k.dim = dim;
    k.cutoff = 1.0;
    k.ell = [](double) { return 1.0; };
    return k;
}

RadialKernel slow_log_kernel(int dim) {
    check_dim(dim);
    RadialKernel k;
    k.name = "slowlog";
    k.dim = dim;
    k.cutoff = 1.0;
    k.ell = [](double r) { return 1.0 / std::log(M_E + 1.0 / r); };
    return k;
}

RadialKernel gaussian_kernel(int dim) {
    check_dim(dim);
    const double c = std::pow(4.0 * M_PI, -0.5 * dim);
    RadialKernel k;
    k.name = "gaussian";
    k.dim = dim;
    k.cutoff = 60.0;
    k.ell = [c, dim](double r) { return c * std::pow(r, dim) * std::exp(-0.25 * r * r); };
    return k;
}

namespace {

/// Near-origin part of the Levy condition: throws if int_0 s ell diverges.
/// Returns the extrapolated integral int_0^min(1,cutoff) s ell(s) ds.
double near_levy_mass(const RadialKernel& kernel, const quad::QuadratureSpec& spec) {
    const double b = std::min(1.0, kernel.cutoff);

    // Near part int_0^b s ell(s) ds over dyadic shells with geometric tail
    // extrapolation; a non-contracting shell sequence means the origin
    // singularity is too strong for a Levy measure.
    double near = 0.0;
    double prev = -1.0;
    bool settled = false;
    for (int k = 0; k < 400; ++k) {
        const double hi = b * std::pow(2.0, -k);
        const double lo = 0.5 * hi;
        const double part =
            quad::integrate([&](double s) { return s * ell_at(kernel, s); }, lo, hi, spec).value;
        near += part;
        if (prev > 0.0 && part > 0.0) {
            const double rho = part / prev;
            if (k >= 20 && rho >= 1.0)
                throw DomainError("levy_condition: int_0 s ell(s) ds diverges");
            if (k >= 8 && rho < 0.999) {
                near += part * rho / (1.0 - rho);
                settled = true;
                break;
            }
        }
        if (part == 0.0 && prev == 0.0) {
            settled = true;
            break;
        }
        prev = part;
    }
    if (!settled) throw DomainError("levy_condition: int_0 s ell(s) ds diverges");
    return near;
}

} // namespace

double levy_condition(const RadialKernel& kernel, const quad::QuadratureSpec& spec) {
    check_dim(kernel.dim);
    const double near = near_levy_mass(kernel, spec);

    double far = 0.0;
    if (kernel.cutoff > 1.0) {
        auto f = [&](double s) { return ell_at(kernel, s) / s; };
        far = std::isfinite(kernel.cutoff)
                  ? quad::integrate(f, 1.0, kernel.cutoff, spec).value
                  : quad::integrate_upper(f, 1.0, spec).value;
    }
    return sf::sphere_area(kernel.dim) * (near + far);
}

namespace {

/// 1 - (angular average of cos over the unit sphere), as a function of
/// x = s|xi|; stable near zero.
double osc_factor(double x, int dim) {
    switch (dim) {
    case 1: {
        const double h = std::sin(0.5 * x);
        return 2.0 * h * h;
    }
    case 2:
        if (x < 0.1) {
            const double x2 = x * x;
            return x2 * (0.25 - x2 * (1.0 / 64.0 - x2 / 2304.0));
        }
        return 1.0 - gsl_sf_bessel_J0(x);
    default:
        if (x < 0.01) {
            const double x2 = x * x;
            return x2 * (1.0 / 6.0 - x2 * (1.0 / 120.0 - x2 / 5040.0));
        }
        return 1.0 - std::sin(x) / x;
    }
}

double angular_factor(int dim) {
    switch (dim) {
    case 1:
        return 2.0;
    case 2:
        return 2.0 * M_PI;
    default:
        return 4.0 * M_PI;
    }
}

} // namespace

quad::QuadResult levy_khintchine(const RadialKernel& kernel, double r,
                                 const quad::QuadratureSpec& spec) {
    check_dim(kernel.dim);
    if (r < 0.0) throw DomainError("levy_khintchine: r must be nonnegative");
    if (r == 0.0) return {0.0, 0.0};
    quad::QuadratureSpec probe = spec;
    probe.rel_tol = std::max(spec.rel_tol, 1e-5);
    near_levy_mass(kernel, probe);

    const double factor = angular_factor(kernel.dim);
    auto f = [&](double s) {
        if (s <= 0.0) return 0.0;
        return osc_factor(s * r, kernel.dim) * ell_at(kernel, s) / s;
    };

    if (std::isfinite(kernel.cutoff)) {
        auto res = quad::integrate(f, 0.0, kernel.cutoff, spec);
        return {factor * res.value, factor * res.abs_error};
    }

    // Infinite support: integrate the oscillatory factor on [0, U], then add
    // the oscillation-averaged tail int_U^inf ell/s ds. The neglected
    // remainder is the oscillating part of the tail; bound it explicitly and
    // fold it into the error estimate. U is capped so the head stays within
    // the subdivision budget (~4000 oscillation periods).
    const double u_cap = std::max(2048.0 / r, std::min(32.0, 25000.0 / r));
    auto head = quad::integrate(f, 0.0, u_cap, spec);
    auto tail = quad::integrate_upper([&](double s) { return ell_at(kernel, s) / s; }, u_cap, spec);
    double osc_bound = 0.0;
    const double ell_u = ell_at(kernel, u_cap);
    switch (kernel.dim) {
    case 1:
        osc_bound = 2.0 * ell_u / (r * u_cap);
        break;
    case 2:
        osc_bound = std::sqrt(2.0 / (M_PI * r)) *
                    quad::integrate_upper(
                        [&](double s) { return ell_at(kernel, s) * std::pow(s, -1.5); }, u_cap, spec)
                        .value;
        break;
    default:
        osc_bound = 2.0 * ell_u / (r * r * u_cap * u_cap);
        break;
    }
    return {factor * (head.value + tail.value),
            factor * (head.abs_error + tail.abs_error + osc_bound)};
}

double psi1(const RadialKernel& kernel, double r, const quad::QuadratureSpec& spec) {
    if (r <= 0.0 || r >= 1.0) throw DomainError("psi1: r must lie in (0, 1)");
    return quad::integrate([&](double s) { return ell_at(kernel, s) / s; }, r, 1.0, spec).value;
}

double psi2(const RadialKernel& kernel, double r, const quad::QuadratureSpec& spec) {
    if (r <= 0.0) throw DomainError("psi2: r must be positive");
    const double v =
        quad::integrate([&](double s) { return s * ell_at(kernel, s); }, 0.0, r, spec).value;
    return v / (r * r);
}

MultiplierFit fit_multiplier_bound(const RadialKernel& kernel, double xi_min, double xi_max,
                                   int npoints, const quad::QuadratureSpec& spec) {
    if (xi_min <= 1.0 || xi_max <= xi_min)
        throw DomainError("fit_multiplier_bound: need 1 < xi_min < xi_max");
    if (npoints < 2) throw DomainError("fit_multiplier_bound: need npoints >= 2");

    std::vector<double> m(npoints), p1(npoints), p2(npoints);
    const double lstep = std::log(xi_max / xi_min) / (npoints - 1);
    for (int i = 0; i < npoints; ++i) {
        const double xi = xi_min * std::exp(i * lstep);
        m[i] = levy_khintchine(kernel, xi, spec).value;
        p1[i] = psi1(kernel, 1.0 / xi, spec);
        p2[i] = psi2(kernel, 1.0 / xi, spec);
    }

    // Scan c2 and take the smallest c1 that still covers every grid point;
    // minimize c1 + c2 for a balanced pair.
    double c2_max = 0.0;
    for (int i = 0; i < npoints; ++i) c2_max = std::max(c2_max, m[i] / p2[i]);
    MultiplierFit best{0.0, 0.0};
    double best_cost = -1.0;
    const int kSteps = 512;
    for (int j = 0; j <= kSteps; ++j) {
        const double c2 = c2_max * j / kSteps;
        double c1 = 0.0;
        for (int i = 0; i < npoints; ++i)
            c1 = std::max(c1, (m[i] - c2 * p2[i]) / p1[i]);
        c1 = std::max(c1, 0.0);
        if (best_cost < 0.0 || c1 + c2 < best_cost) {
            best_cost = c1 + c2;
            best = {c1, c2};
        }
    }
    return best;
}

} // namespace levylab::ops
