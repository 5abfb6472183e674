#include "levylab/hyperlab.hpp"

#include "levylab/errors.hpp"
#include "levylab/special_functions.hpp"
#include "levylab/spectral_solver.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_odeiv2.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace levylab::hyper {

namespace {

struct OdeCtx {
    const std::function<double(double)>* D;
    bool bad = false;
};

int exponent_rhs(double, const double y[], double dydt[], void* params) {
    auto* ctx = static_cast<OdeCtx*>(params);
    const double d = (*ctx->D)(y[0]);
    if (!(d > 0.0) || !std::isfinite(d)) {
        ctx->bad = true;
        return GSL_EBADFUNC;
    }
    dydt[0] = y[0] * y[0] / d;
    return GSL_SUCCESS;
}

} // namespace

QTrace q_ode_solve(const std::function<double(double)>& D, double p, double t_end,
                   double q_max) {
    if (p < 2.0) throw DomainError("q_ode_solve: p must be >= 2");
    if (t_end < 0.0) throw DomainError("q_ode_solve: t_end must be nonnegative");
    if (q_max <= p) throw DomainError("q_ode_solve: q_max must exceed p");

    OdeCtx ctx{&D, false};
    gsl_odeiv2_system sys{exponent_rhs, nullptr, 1, &ctx};
    gsl_odeiv2_step* step = gsl_odeiv2_step_alloc(gsl_odeiv2_step_rkf45, 1);
    gsl_odeiv2_control* ctrl = gsl_odeiv2_control_y_new(1e-14, 1e-12);
    gsl_odeiv2_evolve* ev = gsl_odeiv2_evolve_alloc(1);

    QTrace tr;
    tr.t.push_back(0.0);
    tr.q.push_back(p);
    double t = 0.0;
    double h = 1e-6;
    double y[1] = {p};
    int status = GSL_SUCCESS;
    while (t < t_end && y[0] < q_max) {
        status = gsl_odeiv2_evolve_apply(ev, ctrl, step, &sys, &t, t_end, &h, y);
        if (status != GSL_SUCCESS) break;
        tr.t.push_back(t);
        tr.q.push_back(y[0]);
    }
    tr.blew_up = y[0] >= q_max && t < t_end;
    gsl_odeiv2_evolve_free(ev);
    gsl_odeiv2_control_free(ctrl);
    gsl_odeiv2_step_free(step);

    if (status != GSL_SUCCESS && !tr.blew_up) {
        if (ctx.bad) throw DomainError("q_ode_solve: D must stay positive and finite");
        throw NumericsError("q_ode_solve: step failure near blow-up");
    }
    return tr;
}

double q_of_t(const std::function<double(double)>& D, double p, double t, double q_max) {
    const QTrace tr = q_ode_solve(D, p, t, q_max);
    if (tr.blew_up) throw DomainError("q_of_t: exponent blows up before the requested time");
    return tr.q.back();
}

TailProbe improper_tail_probe(const std::function<double(double)>& f, double a,
                              int max_doublings, const quad::QuadratureSpec& spec) {
    if (a <= 0.0) throw DomainError("improper_tail_probe: a must be positive");
    if (max_doublings < 8) throw DomainError("improper_tail_probe: need >= 8 doublings");

    std::vector<double> inc;
    double sum = 0.0;
    double lo = a;
    for (int k = 0; k < max_doublings; ++k) {
        const double hi = 2.0 * lo;
        const double part = quad::integrate(f, lo, hi, spec).value;
        inc.push_back(part);
        sum += part;
        lo = hi;
        if (std::fabs(part) < 1e-12 * std::max(std::fabs(sum), 1e-300) && k >= 8) break;
    }

    // Ratio trend over the last windows decides the class; an exactly
    // geometric tail (constant ratio < 1) is extrapolated without error.
    std::vector<double> ratios;
    for (std::size_t k = 1; k < inc.size(); ++k)
        if (inc[k - 1] != 0.0) ratios.push_back(inc[k] / inc[k - 1]);

    if (ratios.empty()) return {TailClass::convergent, sum};

    const std::size_t w = std::min<std::size_t>(6, ratios.size());
    double mean = 0.0;
    for (std::size_t i = ratios.size() - w; i < ratios.size(); ++i) mean += ratios[i];
    mean /= static_cast<double>(w);

    if (mean >= 0.95) return {TailClass::divergent, std::numeric_limits<double>::infinity()};
    if (mean <= 0.80 && mean >= 0.0) {
        const double tail = inc.back() * mean / (1.0 - mean);
        return {TailClass::convergent, sum + tail};
    }
    return {TailClass::inconclusive, std::numeric_limits<double>::quiet_NaN()};
}

double blowup_time(const std::function<double(double)>& D, double p) {
    if (p <= 0.0) throw DomainError("blowup_time: p must be positive");
    auto f = [&](double alpha) { return D(alpha) / (alpha * alpha); };
    const TailProbe probe = improper_tail_probe(f, p);
    if (probe.cls == TailClass::inconclusive)
        throw InconclusiveError("blowup_time: tail behaviour not classifiable in probe range");
    return probe.value;
}

double A_p_bound(double p, double t, int dim) {
    if (dim < 1 || dim > 3) throw DomainError("A_p_bound: dim must be 1, 2 or 3");
    if (p <= 1.0) throw DomainError("A_p_bound: p must exceed 1");
    const double t_max = dim / (2.0 * p);
    if (t < 0.0 || t >= t_max)
        throw DomainError("A_p_bound: t must lie in [0, dim/(2p))");
    if (t == 0.0) return 1.0;

    const double n2 = 0.5 * dim;
    if (p == 2.0) {
        // Sharp constant: (4 pi)^{-t} sqrt(Gamma(N/2-2t)/Gamma(N/2+2t))
        //                 (Gamma(N)/Gamma(N/2))^{2t/N}.
        const double ex = -t * std::log(4.0 * M_PI) +
                          0.5 * (sf::log_gamma(n2 - 2.0 * t) - sf::log_gamma(n2 + 2.0 * t)) +
                          (2.0 * t / dim) * (sf::log_gamma(dim) - sf::log_gamma(n2));
        return std::exp(ex);
    }

    // Weak-Young product bound F(t) g_p(t).
    const double f_factor =
        std::exp(sf::log_gamma(n2 - t) - sf::log_gamma(t) - t * std::log(4.0)) /
        std::pow(M_PI, n2);
    const double omega = sf::sphere_area(dim);
    const double a = dim - 2.0 * t;      // N - 2t
    const double b = dim - 2.0 * p * t;  // N - 2pt
    const double expo = a / dim;
    const double g = (1.0 / (2.0 * t)) * std::pow(omega / dim, expo) *
                     ((dim * (p - 1.0) + 2.0 * p * t) / (p * p)) *
                     (std::pow(p * a / b, expo) + std::pow(p * a / (dim * (p - 1.0)), expo));
    return f_factor * g;
}

double A_p_prime_zero(double p, int dim) {
    if (dim < 1 || dim > 3) throw DomainError("A_p_prime_zero: dim must be 1, 2 or 3");
    if (p <= 1.0) throw DomainError("A_p_prime_zero: p must exceed 1");
    const double n2 = 0.5 * dim;
    if (p == 2.0)
        return -2.0 * sf::digamma(n2) - std::log(4.0 * M_PI) +
               (2.0 / dim) * (sf::log_gamma(dim) - sf::log_gamma(n2));

    const double omega = sf::sphere_area(dim);
    const double pm1 = p - 1.0;
    const double term = p / pm1 + pm1 * pm1 / p - (pm1 / p) * std::log(p) -
                        (1.0 / p) * std::log(p / pm1) - 1.0 / p;
    return sf::euler_gamma - sf::digamma(n2) - std::log(4.0) -
           (2.0 / dim) * std::log(omega / dim) + (2.0 / dim) * term;
}

namespace {

/// One-sided fourth-order derivative at 0, step 1e-3.
double forward_derivative_at_zero(const std::function<double(double)>& f) {
    const double h = 1e-3;
    return (-25.0 * f(0.0) + 48.0 * f(h) - 36.0 * f(2.0 * h) + 16.0 * f(3.0 * h) -
            3.0 * f(4.0 * h)) /
           (12.0 * h);
}

} // namespace

GrossConstants gross_forward(const std::function<double(double)>& A,
                             const std::function<double(double)>& q, double p) {
    if (std::fabs(q(0.0) - p) > 1e-9 * std::max(1.0, std::fabs(p)))
        throw DomainError("gross_forward: q(0) must equal p");
    if (std::fabs(A(0.0) - 1.0) > 1e-9)
        throw DomainError("gross_forward: A(0) must equal 1");
    const double qp = forward_derivative_at_zero(q);
    if (qp <= 0.0) throw DomainError("gross_forward: degenerate q'(0) <= 0");
    const double ap = forward_derivative_at_zero(A);
    return {p * p * ap / qp, p * p / qp};
}

double gross_backward(const fn::LogSobFamily& fam, double p, double t, double q_max) {
    const double qt = q_of_t(fam.D, p, t, q_max);
    if (qt == p) return 1.0;
    const double integral =
        quad::integrate([&](double alpha) { return fam.C(alpha) / (alpha * alpha); }, p, qt)
            .value;
    return std::exp(integral);
}

fn::LogSobFamily log_iminus_delta_family(int dim) {
    if (dim < 1 || dim > 3) throw DomainError("log_iminus_delta_family: dim must be 1, 2 or 3");
    fn::LogSobFamily fam;
    fam.name = "logIminusDelta";
    fam.C = [dim](double p) { return 0.5 * dim * A_p_prime_zero(p, dim); };
    fam.D = [dim](double) { return 0.5 * dim; };
    return fam;
}

double super_beta(const std::function<double(double, double)>& B, double q, double eps) {
    if (q <= 2.0) throw DomainError("super_beta: q must exceed 2");
    if (eps <= 0.0) throw DomainError("super_beta: eps must be positive");
    const double s = 1.0 - 2.0 / q;
    return std::log(B(eps * s, q)) / s;
}

double ultra_M(const std::function<double(double)>& beta, double t,
               const quad::QuadratureSpec& spec) {
    if (t <= 0.0) throw DomainError("ultra_M: t must be positive");
    return quad::integrate(beta, 0.0, t, spec).value / t;
}

HyperTrace run_hyper_experiment(const ops::LevySymbol& symbol, const grid::ScalarField& u0,
                                double p, const std::vector<double>& times,
                                const fn::LogSobFamily& fam) {
    if (times.empty()) throw DomainError("run_hyper_experiment: empty time schedule");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (times[i] <= times[i - 1])
            throw DomainError("run_hyper_experiment: times must be strictly increasing");
    if (times.front() < 0.0) throw DomainError("run_hyper_experiment: negative time");

    auto band_fraction = [](const grid::ScalarField& u) {
        return 1.0 - grid::box_mass_fraction(u, 0.75);
    };
    if (band_fraction(u0) > 0.01)
        throw NumericsError("run_hyper_experiment: >1% of the initial mass in the boundary band");

    const bool sharp_log = symbol.name == "log_bessel";
    const double norm_p = grid::lp_norm(u0, p);
    if (norm_p <= 0.0) throw DomainError("run_hyper_experiment: u0 has zero mass");

    HyperTrace trace;
    trace.symbol_name = symbol.name;
    trace.p = p;
    trace.grid = u0.grid;
    for (double t : times) {
        HyperSample s;
        s.t = t;
        s.q = q_of_t(fam.D, p, t);
        const auto ut = spectral::evolve_spectral(symbol, u0, t);
        if (band_fraction(ut) > 0.01)
            throw NumericsError("run_hyper_experiment: >1% of the mass reached the boundary band");
        s.norm = grid::lp_norm(ut, s.q);
        const double a = sharp_log ? A_p_bound(p, t, u0.grid.dim) : gross_backward(fam, p, t);
        s.bound = a * norm_p;
        s.ratio = s.norm / s.bound;
        if (!std::isfinite(s.ratio) || s.ratio <= 0.0)
            throw NumericsError("run_hyper_experiment: non-finite norm ratio");
        trace.samples.push_back(s);
    }
    return trace;
}

ClassifyEvidence classify_kernel_threshold(const ops::RadialKernel& kernel,
                                           const ClassifyOptions& opt) {
    if (opt.k_max <= opt.k_min || opt.tail_window < 3 ||
        opt.k_max - opt.k_min + 1 < opt.tail_window)
        throw DomainError("classify_kernel_threshold: malformed probe schedule");

    ClassifyEvidence ev;
    ev.fourier_exponent_t1 = std::numeric_limits<double>::quiet_NaN();
    ev.fourier_exponent_t2 = std::numeric_limits<double>::quiet_NaN();
    for (int k = opt.k_min; k <= opt.k_max; ++k) {
        const double r = std::pow(2.0, -k);
        ev.r.push_back(r);
        ev.ell.push_back(kernel.ell(r));
    }

    // Least-squares slope of log ell against log(1/r) over the last
    // tail_window probes, plus the relative spread there.
    const std::size_t n = ev.ell.size();
    const std::size_t w = static_cast<std::size_t>(opt.tail_window);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    double emin = std::numeric_limits<double>::infinity(), emax = 0.0, emean = 0.0;
    for (std::size_t i = n - w; i < n; ++i) {
        if (!(ev.ell[i] > 0.0))
            throw InconclusiveError("classify_kernel_threshold: nonpositive profile probe");
        const double x = -std::log(ev.r[i]);
        const double y = std::log(ev.ell[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        emin = std::min(emin, ev.ell[i]);
        emax = std::max(emax, ev.ell[i]);
        emean += ev.ell[i];
    }
    const double dw = static_cast<double>(w);
    emean /= dw;
    ev.slope = (dw * sxy - sx * sy) / (dw * sxx - sx * sx);
    ev.rel_span = (emax - emin) / emean;

    if (ev.slope > 0.05) ev.verdict = KernelClass::ultracontractive;
    else if (ev.slope < -0.02) ev.verdict = KernelClass::not_eventually_ultra;
    else if (ev.rel_span < 0.02) ev.verdict = KernelClass::strong_hyper_eventual_ultra;
    else
        throw InconclusiveError(
            "classify_kernel_threshold: profile trend oscillates across probe scales");

    if (opt.fourier_probe) {
        ev.fourier_exponent_t1 = fourier_decay_exponent(kernel, 1.0);
        ev.fourier_exponent_t2 = fourier_decay_exponent(kernel, 2.0);
    }
    return ev;
}

double fourier_decay_exponent(const ops::RadialKernel& kernel, double t, double xi_min,
                              double xi_max, int npoints) {
    if (t <= 0.0) throw DomainError("fourier_decay_exponent: t must be positive");
    if (npoints < 3 || xi_min <= 0.0 || xi_max <= xi_min)
        throw DomainError("fourier_decay_exponent: malformed frequency grid");
    const double lstep = std::log(xi_max / xi_min) / (npoints - 1);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < npoints; ++i) {
        const double x = std::log(xi_min) + i * lstep;
        const double y = t * ops::levy_khintchine(kernel, std::exp(x)).value;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double dn = npoints;
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

} // namespace levylab::hyper
