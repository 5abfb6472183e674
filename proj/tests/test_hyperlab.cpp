#include "doctest.h"

#include "levylab/corpus.hpp"
#include "levylab/errors.hpp"
#include "levylab/grid.hpp"
#include "levylab/hyperlab.hpp"
#include "levylab/kernels.hpp"
#include "levylab/quadrature.hpp"
#include "levylab/special_functions.hpp"
#include "levylab/symbols.hpp"

#include "support/golden.hpp"
#include "support/helpers.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

using namespace levylab;
using helpers::rel_err;

TEST_CASE("exponent ODE reproduces the constant-D closed form") {
    for (int dim = 1; dim <= 3; ++dim) {
        const double p = 2.0;
        auto D = [dim](double) { return 0.5 * dim; };
        const auto trace = hyper::q_ode_solve(D, p, 10.0, 1e3);
        CHECK(trace.blew_up);
        double worst = 0.0;
        for (std::size_t i = 0; i < trace.t.size(); ++i) {
            const double want = dim * p / (dim - 2.0 * p * trace.t[i]);
            worst = std::max(worst, rel_err(trace.q[i], want));
        }
        CHECK(worst < 1e-6);
        CHECK(trace.q.back() >= 1e3 * (1.0 - 1e-9));
    }
}

TEST_CASE("exponent ODE with D = q solves to p e^t") {
    auto D = [](double q) { return q; };
    for (double t : {0.3, 1.0, 2.5}) {
        CHECK(rel_err(hyper::q_of_t(D, 3.0, t), 3.0 * std::exp(t)) < 1e-9);
    }
    // Never blows up: q_of_t stays finite for long horizons.
    const auto trace = hyper::q_ode_solve(D, 3.0, 4.0);
    CHECK_FALSE(trace.blew_up);
}

TEST_CASE("q_of_t refuses a time past blow-up") {
    auto D = [](double) { return 0.5; };
    // Blow-up at N/(2p) = 0.25 for N=1, p=2.
    CHECK_THROWS_AS(hyper::q_of_t(D, 2.0, 0.3), DomainError);
    CHECK(std::isfinite(hyper::q_of_t(D, 2.0, 0.2)));
}

TEST_CASE("ODE inputs are validated") {
    CHECK_THROWS_AS(hyper::q_ode_solve([](double) { return 0.5; }, 0.9, 1.0), DomainError);
    CHECK_THROWS_AS(hyper::q_ode_solve([](double) { return -1.0; }, 2.0, 1.0), DomainError);
}

TEST_CASE("improper tail probe classifies the three regimes") {
    const auto conv = hyper::improper_tail_probe([](double x) { return 1.0 / (x * x); }, 1.0);
    CHECK(conv.cls == hyper::TailClass::convergent);
    CHECK(rel_err(conv.value, 1.0) < 1e-6);

    const auto div = hyper::improper_tail_probe([](double x) { return 1.0 / x; }, 1.0);
    CHECK(div.cls == hyper::TailClass::divergent);
    CHECK(std::isinf(div.value));

    // Windows shrink like 2^{-0.2k}: too slow for geometric extrapolation,
    // too fast to call divergent.
    const auto inc =
        hyper::improper_tail_probe([](double x) { return std::pow(x, -1.2); }, 1.0);
    CHECK(inc.cls == hyper::TailClass::inconclusive);
    CHECK(std::isnan(inc.value));
}

TEST_CASE("blow-up time closed forms") {
    for (int dim = 1; dim <= 3; ++dim) {
        for (double p : {2.0, 3.0, 5.0}) {
            auto D = [dim](double) { return 0.5 * dim; };
            CHECK(std::fabs(hyper::blowup_time(D, p) - dim / (2.0 * p)) < 1e-8);
        }
    }
    CHECK(std::isinf(hyper::blowup_time([](double a) { return a; }, 2.0)));
    CHECK_THROWS_AS(hyper::blowup_time([](double a) { return a * std::pow(a, -0.2); }, 2.0),
                    InconclusiveError);
}

TEST_CASE("A_p bound: frozen goldens") {
    for (const auto& g : golden::a_bound) {
        CHECK(rel_err(hyper::A_p_bound(g.p, g.t, g.dim), g.value) < 1e-10);
    }
}

TEST_CASE("A_p bound: analytic t = 0 limit and domain") {
    for (double p : {1.5, 2.0, 3.0, 7.0, 40.0}) {
        CHECK(hyper::A_p_bound(p, 0.0, 1) == 1.0);
        CHECK(hyper::A_p_bound(p, 0.0, 3) == 1.0);
    }
    CHECK_THROWS_AS(hyper::A_p_bound(2.0, 0.25, 1), DomainError);
    CHECK_THROWS_AS(hyper::A_p_bound(2.0, -0.01, 1), DomainError);
    CHECK_THROWS_AS(hyper::A_p_bound(1.0, 0.1, 1), DomainError);
    CHECK_THROWS_AS(hyper::A_p_bound(2.0, 0.1, 4), DomainError);
}

TEST_CASE("A_p general bound dominates the sharp p = 2 value") {
    // The sharp p = 2 expression and the general product bound are distinct
    // formulas; the product bound is the weaker one, so just above p = 2 it
    // must sit at or above the sharp value and vary smoothly in p.
    for (int dim = 1; dim <= 3; ++dim) {
        for (double t : {0.02, 0.05, 0.1}) {
            const double sharp = hyper::A_p_bound(2.0, t, dim);
            const double near = hyper::A_p_bound(2.0 + 1e-9, t, dim);
            const double nudged = hyper::A_p_bound(2.0 + 1e-4, t, dim);
            CHECK(near >= sharp * (1.0 - 1e-12));
            CHECK(rel_err(nudged, near) < 1e-3);
        }
    }
}

TEST_CASE("A'_p(0): frozen goldens and the sharp N = 2 constant") {
    for (const auto& g : golden::a_prime) {
        CHECK(rel_err(hyper::A_p_prime_zero(g.p, g.dim), g.value) < 1e-12);
    }
    const double want = 2.0 * sf::euler_gamma - std::log(4.0 * 3.14159265358979323846);
    CHECK(std::fabs(hyper::A_p_prime_zero(2.0, 2) - want) < 1e-10);
    CHECK_THROWS_AS(hyper::A_p_prime_zero(1.0, 1), DomainError);
}

TEST_CASE("A'_p(0) is invariant under conjugating the exponent") {
    for (double p : {1.2, 1.5, 3.0, 8.0}) {
        const double q = p / (p - 1.0);
        for (int dim = 1; dim <= 3; ++dim) {
            CHECK(rel_err(hyper::A_p_prime_zero(p, dim), hyper::A_p_prime_zero(q, dim)) <
                  1e-11);
        }
    }
}

TEST_CASE("A'_p(0) growth is (2/N)(p - log p) plus a bounded remainder") {
    for (int dim = 1; dim <= 3; ++dim) {
        for (double p = 10.0; p <= 1e4; p *= 10.0) {
            const double rem = hyper::A_p_prime_zero(p, dim) -
                               (2.0 / dim) * (p - std::log(p));
            CHECK(std::fabs(rem) < 3.0);
        }
    }
}

TEST_CASE("finite-difference slope of A_p matches the closed-form derivative") {
    auto fd_at_zero = [](const std::function<double(double)>& f) {
        const double h = 1e-3;
        return (-25.0 * f(0.0) + 48.0 * f(h) - 36.0 * f(2.0 * h) + 16.0 * f(3.0 * h) -
                3.0 * f(4.0 * h)) /
               (12.0 * h);
    };
    for (int dim = 1; dim <= 3; ++dim) {
        for (double p : {2.0, 3.0, 4.0}) {
            const double fd =
                fd_at_zero([p, dim](double t) { return hyper::A_p_bound(p, t, dim); });
            CHECK(std::fabs(fd - hyper::A_p_prime_zero(p, dim)) < 1e-6);
        }
    }
}

TEST_CASE("gross machinery closed loops") {
    // Forward: recover (C, D) from the closed forms of the log flow.
    auto A2 = [](double t) { return hyper::A_p_bound(2.0, t, 1); };
    auto q2 = [](double t) { return 2.0 / (1.0 - 4.0 * t); };
    const auto gc = hyper::gross_forward(A2, q2, 2.0);
    CHECK(std::fabs(gc.D - 0.5) < 1e-8);
    CHECK(std::fabs(gc.C - 0.5 * hyper::A_p_prime_zero(2.0, 1)) < 1e-8);

    // Backward with C == 0 gives 1, with C(a) = a gives q/p.
    fn::LogSobFamily flat;
    flat.name = "flat";
    flat.C = [](double) { return 0.0; };
    flat.D = [](double) { return 0.5; };
    CHECK(std::fabs(hyper::gross_backward(flat, 2.0, 0.1) - 1.0) < 1e-12);

    fn::LogSobFamily lin;
    lin.name = "linear";
    lin.C = [](double a) { return a; };
    lin.D = [](double) { return 0.5; };
    const double q = 2.0 / (1.0 - 4.0 * 0.1);
    CHECK(rel_err(hyper::gross_backward(lin, 2.0, 0.1), q / 2.0) < 1e-9);

    CHECK_THROWS_AS(hyper::gross_forward(A2, [](double) { return 2.0; }, 2.0), DomainError);
}

TEST_CASE("round trip: forward constants feed backward into the Gross integral") {
    const auto fam = hyper::log_iminus_delta_family(1);
    CHECK(fam.name == "logIminusDelta");
    CHECK(fam.D(3.7) == doctest::Approx(0.5));
    for (double t : {0.05, 0.1}) {
        const double back = hyper::gross_backward(fam, 2.0, t);
        const double q = 2.0 / (1.0 - 4.0 * t);
        const auto integral = quad::integrate(
            [&](double a) { return 0.5 * hyper::A_p_prime_zero(a, 1) / (a * a); }, 2.0, q);
        CHECK(std::fabs(back - std::exp(integral.value)) < 1e-8);
    }
}

TEST_CASE("super_beta and ultra_M closed forms") {
    // B(t, q) = e^{c t} makes beta(eps) = c eps and M(t) = c t / 2.
    const double c = 1.7;
    auto B = [c](double t, double) { return std::exp(c * t); };
    for (double q : {3.0, 10.0}) {
        const double s = 1.0 - 2.0 / q;
        CHECK(rel_err(hyper::super_beta(B, q, 0.4), c * 0.4 * s / s) < 1e-12);
    }
    auto beta = [c](double s) { return c * s; };
    CHECK(rel_err(hyper::ultra_M(beta, 2.0), c * 1.0) < 1e-9);
    CHECK_THROWS_AS(hyper::super_beta(B, 2.0, 0.1), DomainError);
    CHECK_THROWS_AS(hyper::ultra_M(beta, 0.0), DomainError);
}

TEST_CASE("hyper experiment on the log flow stays under the sharp bound") {
    const auto g = helpers::grid1(2048, 40.0);
    auto u0 = corpus::gaussian_bump(g, 1.0);
    const double n2 = grid::lp_norm(u0, 2.0);
    for (auto& v : u0.data) v /= n2;
    const auto trace = hyper::run_hyper_experiment(
        ops::builtin_symbol("log_bessel", 1), u0, 2.0, {0.05, 0.1, 0.15, 0.2},
        hyper::log_iminus_delta_family(1));
    REQUIRE(trace.samples.size() == 4);
    CHECK(trace.p == 2.0);
    for (const auto& s : trace.samples) {
        CHECK(s.q == doctest::Approx(2.0 / (1.0 - 4.0 * s.t)).epsilon(1e-6));
        CHECK(s.ratio <= 1.05);
        CHECK(s.ratio == doctest::Approx(s.norm / s.bound));
    }
}

TEST_CASE("hyper experiment rejects fields leaking around the torus") {
    const auto g = helpers::grid1(256, 40.0);
    auto flat = grid::make_field(g);
    for (auto& v : flat.data) v = 1.0;
    CHECK_THROWS_AS(hyper::run_hyper_experiment(ops::builtin_symbol("log_bessel", 1), flat,
                                                2.0, {0.05}, hyper::log_iminus_delta_family(1)),
                    NumericsError);
}

TEST_CASE("hyper experiment validates its schedule") {
    const auto g = helpers::grid1(256, 40.0);
    const auto u0 = corpus::gaussian_bump(g, 1.0);
    const auto fam = hyper::log_iminus_delta_family(1);
    const auto sym = ops::builtin_symbol("log_bessel", 1);
    CHECK_THROWS_AS(hyper::run_hyper_experiment(sym, u0, 2.0, {0.1, 0.05}, fam), DomainError);
    CHECK_THROWS_AS(hyper::run_hyper_experiment(sym, u0, 2.0, {-0.1}, fam), DomainError);
}

TEST_CASE("threshold classifier separates the three regimes") {
    const auto log_ev = hyper::classify_kernel_threshold(ops::log_kernel(1));
    CHECK(log_ev.verdict == hyper::KernelClass::strong_hyper_eventual_ultra);
    CHECK(std::fabs(log_ev.slope) < 0.05);

    const auto trunc_ev = hyper::classify_kernel_threshold(ops::truncated_kernel(1));
    CHECK(trunc_ev.verdict == hyper::KernelClass::strong_hyper_eventual_ultra);

    const auto frac_ev = hyper::classify_kernel_threshold(ops::fractional_kernel(1, 1.0));
    CHECK(frac_ev.verdict == hyper::KernelClass::ultracontractive);
    CHECK(frac_ev.slope > 0.5);

    const auto slow_ev = hyper::classify_kernel_threshold(ops::slow_log_kernel(1));
    CHECK(slow_ev.verdict == hyper::KernelClass::not_eventually_ultra);
    CHECK(slow_ev.slope < 0.0);

    REQUIRE(log_ev.r.size() == log_ev.ell.size());
    CHECK(log_ev.r.size() >= 8);
}

TEST_CASE("fourier decay exponent of the truncated kernel flow") {
    const double e2 = hyper::fourier_decay_exponent(ops::truncated_kernel(1), 2.0);
    CHECK(std::fabs(e2 - 4.0) < 0.4);
    const double e1 = hyper::fourier_decay_exponent(ops::truncated_kernel(1), 1.0);
    CHECK(std::fabs(e1 - 2.0) < 0.2);
}
