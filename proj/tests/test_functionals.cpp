#include "doctest.h"

#include "levylab/corpus.hpp"
#include "levylab/errors.hpp"
#include "levylab/functionals.hpp"
#include "levylab/grid.hpp"
#include "levylab/hyperlab.hpp"
#include "levylab/kernels.hpp"
#include "levylab/symbols.hpp"

#include "support/golden.hpp"
#include "support/helpers.hpp"

#include <cmath>
#include <vector>

using namespace levylab;
using helpers::rel_err;

namespace {
const double pi = 3.14159265358979323846;
}

TEST_CASE("entropy of an exact indicator block vanishes") {
    // h = 0.125, eight cells: |f|^p has measure exactly 1.
    const auto g = helpers::grid_nd(1, 256, 32.0);
    auto f = grid::make_field(g);
    const double c = 2.7;
    const double p = 3.0;
    for (int i = 0; i < 8; ++i) {
        f.data[static_cast<std::size_t>(120 + i)] = std::pow(c, 1.0 / p);
    }
    CHECK(std::fabs(fn::entropy(f, p)) < 1e-12);

    auto zero = grid::make_field(g);
    CHECK(fn::entropy(zero, 2.0) == 0.0);
}

TEST_CASE("entropy golden for the width-2 gaussian") {
    const auto g = helpers::grid1(1024, 40.0);
    const auto f = helpers::gaussian_sigma(g, 2.0);
    CHECK(std::fabs(fn::entropy(f, 2.0) - golden::entropy_gaussian_w2) < 1e-8);
}

TEST_CASE("entropy is positively homogeneous of degree one in |f|^p") {
    const auto g = helpers::grid1(512, 40.0);
    const auto f = corpus::gaussian_bump(g, 2.0);
    const double base = fn::entropy(f, 2.0);
    for (double lam : {0.3, 2.0, 17.0}) {
        auto scaled = f;
        for (auto& v : scaled.data) v *= lam;
        CHECK(rel_err(fn::entropy(scaled, 2.0), lam * lam * base) < 1e-10);
    }
    CHECK_THROWS_AS(fn::entropy(f, 0.5), DomainError);
}

TEST_CASE("fourier form basics") {
    const auto g = helpers::grid1(256, 16.0);
    const auto sym = ops::builtin_symbol("log_bessel", 1);

    auto c = grid::make_field(g);
    for (auto& v : c.data) v = 3.0;
    const auto any = corpus::band_limited_field(g, 5);
    CHECK(std::fabs(fn::dirichlet_form_fourier(sym, c, any)) < 1e-12);

    // Single mode: E(f, f) = m(xi_k) ||f||_2^2.
    const int k = 3;
    const auto mode = grid::sample(g, [&](const std::array<double, 3>& x) {
        return std::cos(2.0 * pi * k * x[0] / g.length);
    });
    const double xi = 2.0 * pi * k / g.length;
    const double want = sym.eval(xi) * grid::inner(mode, mode);
    CHECK(rel_err(fn::dirichlet_form_fourier(sym, mode, mode), want) < 1e-12);

    CHECK_THROWS_AS(
        fn::dirichlet_form_fourier(ops::builtin_symbol("log_riesz", 1), mode, mode),
        DomainError);
}

TEST_CASE("kernel form basics") {
    const auto g = helpers::grid1(256, 16.0);
    const auto kern = ops::log_kernel(1);
    auto c = grid::make_field(g);
    for (auto& v : c.data) v = -2.0;
    const auto f = corpus::band_limited_field(g, 8);
    CHECK(std::fabs(fn::dirichlet_form_kernel(kern, c, f)) < 1e-12);
    CHECK(fn::dirichlet_form_kernel(kern, f, f) >= 0.0);

    // Handle and one-shot form agree.
    const auto handle = fn::kernel_form(kern, g);
    CHECK(handle(f, f) == doctest::Approx(fn::dirichlet_form_kernel(kern, f, f)));
}

TEST_CASE("fourier and kernel forms agree on the bounded gaussian kernel") {
    const auto g = helpers::grid1(512, 40.0);
    const auto f = corpus::gaussian_bump(g, 2.0);
    const auto h = corpus::gaussian_bump(g, 3.0);
    const double a =
        fn::dirichlet_form_fourier(ops::builtin_symbol("zero_order_gaussian", 1), f, h);
    const double b = fn::dirichlet_form_kernel(ops::gaussian_kernel(1), f, h);
    CHECK(rel_err(b, a) < 1e-6);
}

TEST_CASE("energy grows with the kernel") {
    const auto g = helpers::grid1(128, 20.0);
    const auto base = ops::log_kernel(1);
    ops::RadialKernel bigger = base;
    bigger.name = "log-uplift";
    auto ell = base.ell;
    bigger.ell = [ell](double r) { return ell(r) * (1.0 + 0.7 * std::exp(-r)); };
    for (unsigned seed : {2u, 3u, 4u}) {
        auto u = corpus::band_limited_field(g, seed);
        for (auto& v : u.data) v = std::fabs(v);
        grid::ScalarField up = u;
        for (auto& v : up.data) v = std::pow(v, 2.0);
        const double small = fn::dirichlet_form_kernel(base, up, u);
        const double big = fn::dirichlet_form_kernel(bigger, up, u);
        CHECK(big >= small - 1e-14);
    }
}

TEST_CASE("log-sobolev residual is nonpositive for the log family") {
    const auto g = helpers::grid1(1024, 40.0);
    const auto fam = hyper::log_iminus_delta_family(1);
    const auto form = fn::fourier_form(ops::builtin_symbol("log_bessel", 1));
    const auto f = corpus::gaussian_bump(g, 1.0);
    CHECK(fn::plog_sobolev_residual(f, 2.0, fam, form) <= 0.0);
    for (double lam : {0.1, 1.0, 10.0}) {
        auto scaled = f;
        for (auto& v : scaled.data) v *= lam;
        CHECK(fn::plog_sobolev_residual(scaled, 2.0, fam, form) <= 0.0);
    }
    auto zero = grid::make_field(g);
    CHECK(fn::plog_sobolev_residual(zero, 2.0, fam, form) == 0.0);
    CHECK_THROWS_AS(fn::plog_sobolev_residual(f, 1.5, fam, form), DomainError);
}

TEST_CASE("stroock-varopoulos gap") {
    const auto g = helpers::grid1(256, 40.0);
    const auto form = fn::kernel_form(ops::log_kernel(1), g);
    auto f = corpus::band_limited_field(g, 77);
    for (auto& v : f.data) v = std::fabs(v);

    // p = 2 collapses to an identity.
    CHECK(std::fabs(fn::stroock_varopoulos_gap(f, 2.0, form)) < 1e-12);
    CHECK(fn::stroock_varopoulos_gap(f, 3.0, form) >= 0.0);

    for (unsigned seed = 0; seed < 100; ++seed) {
        auto u = corpus::band_limited_field(g, 1000 + seed);
        for (auto& v : u.data) v = std::fabs(v);
        CHECK(fn::stroock_varopoulos_gap(u, 4.0, form) >= -1e-12);
    }

    auto neg = corpus::band_limited_field(g, 5);
    CHECK_THROWS_AS(fn::stroock_varopoulos_gap(neg, 3.0, form), DomainError);
    CHECK_THROWS_AS(fn::stroock_varopoulos_gap(f, 1.0, form), DomainError);
}

TEST_CASE("d/dt identity: q constant") {
    const auto g = helpers::grid1(1024, 40.0);
    const auto u0 = helpers::gaussian_sigma(g, 2.0);
    const auto sym = ops::builtin_symbol("log_bessel", 1);
    const double mis =
        fn::ddt_identity_check(sym, u0, [](double) { return 3.0; }, 0.1);
    CHECK(mis <= 1e-6);
}

TEST_CASE("d/dt identity: blow-up exponent schedule, second-order in delta") {
    const auto g = helpers::grid1(1024, 40.0);
    const auto u0 = helpers::gaussian_sigma(g, 2.0);
    const auto sym = ops::builtin_symbol("log_bessel", 1);
    auto q = [](double t) { return 2.0 / (1.0 - 2.0 * t); };
    const double at_1e3 = fn::ddt_identity_check(sym, u0, q, 0.1, 1e-3);
    CHECK(at_1e3 <= 1e-5);
    const double at_5e4 = fn::ddt_identity_check(sym, u0, q, 0.1, 5e-4);
    const double ratio = at_1e3 / at_5e4;
    CHECK(ratio > 4.0 * 0.8);
    CHECK(ratio < 4.0 * 1.2);
}

TEST_CASE("d/dt identity: constant field") {
    const auto g = helpers::grid1(512, 40.0);
    auto u0 = grid::make_field(g);
    for (auto& v : u0.data) v = 1.0;
    const auto sym = ops::builtin_symbol("log_bessel", 1);
    const double mis =
        fn::ddt_identity_check(sym, u0, [](double t) { return 2.0 + t; }, 0.1);
    CHECK(mis <= 1e-10);
}

TEST_CASE("d/dt identity rejects bad inputs") {
    const auto g = helpers::grid1(256, 40.0);
    const auto sym = ops::builtin_symbol("log_bessel", 1);
    auto u0 = corpus::band_limited_field(g, 3);
    CHECK_THROWS_AS(fn::ddt_identity_check(sym, u0, [](double) { return 2.0; }, 0.1),
                    DomainError);
    const auto pos = corpus::gaussian_bump(g, 2.0);
    CHECK_THROWS_AS(fn::ddt_identity_check(sym, pos, [](double) { return 2.0; }, 1e-4),
                    DomainError);
}
