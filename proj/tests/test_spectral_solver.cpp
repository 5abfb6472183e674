#include "doctest.h"

#include "levylab/corpus.hpp"
#include "levylab/errors.hpp"
#include "levylab/fft.hpp"
#include "levylab/grid.hpp"
#include "levylab/spectral_solver.hpp"
#include "levylab/symbols.hpp"

#include "support/helpers.hpp"

#include <cmath>
#include <complex>
#include <limits>

using namespace levylab;
using helpers::rel_err;

namespace {
const double pi = 3.14159265358979323846;
const double inf = std::numeric_limits<double>::infinity();

double rel_l2_diff(const grid::ScalarField& a, const grid::ScalarField& b) {
    grid::ScalarField d = a;
    for (std::size_t i = 0; i < d.data.size(); ++i) d.data[i] -= b.data[i];
    return grid::lp_norm(d, 2.0) / grid::lp_norm(b, 2.0);
}
} // namespace

TEST_CASE("fft round trip and Plancherel") {
    for (int dim = 1; dim <= 3; ++dim) {
        const auto g = helpers::grid_nd(dim, dim == 3 ? 16 : 64, 17.0);
        const auto f = corpus::band_limited_field(g, 5);
        const spectral::Fft& fft = spectral::fft_for(g);
        const auto back = fft.inverse(fft.forward(f.data));
        double worst = 0.0;
        for (std::size_t i = 0; i < f.data.size(); ++i) {
            worst = std::max(worst, std::fabs(back[i] - f.data[i]));
        }
        CHECK(worst < 1e-12);

        // h^N sum |u|^2 = L^{-N} sum |uhat|^2.
        const auto fc = fft.forward(f.data);
        double phys = 0.0;
        for (double v : f.data) phys += v * v;
        phys *= g.cell_volume();
        double freq = 0.0;
        for (const auto& c : fc) freq += std::norm(c);
        freq /= std::pow(g.length, dim);
        CHECK(rel_err(phys, freq) < 1e-12);
    }
}

TEST_CASE("evolve at t = 0 is the identity up to a transform round trip") {
    const auto g = helpers::grid1(512, 40.0);
    const auto u0 = corpus::gaussian_bump(g, 2.0);
    const auto u = spectral::evolve_spectral(ops::builtin_symbol("log_bessel", 1), u0, 0.0);
    CHECK(rel_l2_diff(u, u0) < 1e-13);
}

TEST_CASE("single Fourier mode is an exact eigenfunction of the laplacian flow") {
    const auto g = helpers::grid1(256, 10.0);
    const auto u0 = grid::sample(g, [&](const std::array<double, 3>& x) {
        return std::cos(2.0 * pi * x[0] / g.length);
    });
    const double t = 0.7;
    const auto u = spectral::evolve_spectral(ops::builtin_symbol("laplacian", 1), u0, t);
    const double xi = 2.0 * pi / g.length;
    const double decay = std::exp(-t * xi * xi);
    for (std::size_t i = 0; i < u.data.size(); ++i) {
        CHECK(std::fabs(u.data[i] - decay * u0.data[i]) < 1e-12);
    }
}

TEST_CASE("gaussian under the heat flow matches the continuum closed form") {
    const auto g = helpers::grid1(1024, 40.0);
    const double w = 1.0;
    const auto u0 = helpers::gaussian_sigma(g, w);
    const double t = 0.8;
    const auto u = spectral::evolve_spectral(ops::builtin_symbol("laplacian", 1), u0, t);
    // exp(-x^2/(2w^2)) evolves to w/sqrt(w^2+2t) exp(-x^2/(2(w^2+2t))).
    const double s2 = w * w + 2.0 * t;
    const auto want = grid::sample(g, [&](const std::array<double, 3>& x) {
        const double d = g.wrap(x[0] - 0.5 * g.length);
        return w / std::sqrt(s2) * std::exp(-d * d / (2.0 * s2));
    });
    CHECK(rel_l2_diff(u, want) < 1e-10);
}

TEST_CASE("mass and mean are conserved, L^p norms contract") {
    const auto g = helpers::grid1(1024, 40.0);
    const auto sym = ops::builtin_symbol("log_bessel", 1);
    for (unsigned seed : {3u, 11u}) {
        const auto u0 = corpus::band_limited_field(g, seed);
        for (double t : {0.1, 0.5, 2.0}) {
            const auto u = spectral::evolve_spectral(sym, u0, t);
            CHECK(std::fabs(grid::mass(u) - grid::mass(u0)) < 1e-12 * (1.0 + std::fabs(grid::mass(u0))));
            for (double p : {1.0, 2.0, inf}) {
                CHECK(grid::lp_norm(u, p) <= grid::lp_norm(u0, p) * (1.0 + 1e-12));
            }
        }
    }
}

TEST_CASE("positivity is preserved to round-off") {
    const auto g = helpers::grid1(512, 40.0);
    const auto u0 = corpus::smoothed_indicator(g, 5.0, 0.625);
    const auto u =
        spectral::evolve_spectral(ops::builtin_symbol("log_bessel", 1), u0, 0.4);
    const double floor = -1e-12 * grid::lp_norm(u0, inf);
    for (double v : u.data) CHECK(v >= floor);
}

TEST_CASE("semigroup property") {
    const auto g = helpers::grid1(512, 40.0);
    const auto sym = ops::builtin_symbol("log_bessel", 1);
    const auto u0 = corpus::gaussian_bump(g, 1.0);
    const auto one = spectral::evolve_spectral(sym, u0, 0.7);
    const auto two =
        spectral::evolve_spectral(sym, spectral::evolve_spectral(sym, u0, 0.3), 0.4);
    CHECK(rel_l2_diff(two, one) < 1e-12);
}

TEST_CASE("bessel-space norm identity for the log flow") {
    // e^{-t log(1+xi^2)} = (1+xi^2)^{-t}: weighting |uhat(t)|^2 by
    // (1+xi^2)^{2t} must reproduce |uhat(0)|^2 mode by mode.
    const auto g = helpers::grid1(512, 40.0);
    const auto sym = ops::builtin_symbol("log_bessel", 1);
    const auto u0 = corpus::gaussian_bump(g, 2.0);
    const double t = 0.3;
    const auto u = spectral::evolve_spectral(sym, u0, t);
    const spectral::Fft& fft = spectral::fft_for(g);
    const auto c0 = fft.forward(u0.data);
    const auto ct = fft.forward(u.data);
    double a = 0.0;
    double b = 0.0;
    for (std::size_t i = 0; i < c0.size(); ++i) {
        const double xi = g.frequency_norm(i);
        a += std::pow(1.0 + xi * xi, 2.0 * t) * std::norm(ct[i]);
        b += std::norm(c0[i]);
    }
    CHECK(rel_err(a, b) < 1e-10);
}

TEST_CASE("log_riesz symbol admitted only inside its window") {
    const auto g = helpers::grid1(256, 40.0);
    const auto lr = ops::builtin_symbol("log_riesz", 1);
    const auto u0 = corpus::gaussian_bump(g, 2.0);
    const auto u = spectral::evolve_spectral(lr, u0, 0.3);
    CHECK(std::isfinite(grid::lp_norm(u, 2.0)));
    CHECK_THROWS_AS(spectral::evolve_spectral(lr, u0, 0.5), DomainError);
    CHECK_THROWS_AS(spectral::evolve_spectral(lr, u0, 0.8), DomainError);
}

TEST_CASE("solver rejects junk") {
    const auto g = helpers::grid1(128, 10.0);
    auto u0 = corpus::gaussian_bump(g, 1.0);
    CHECK_THROWS_AS(
        spectral::evolve_spectral(ops::builtin_symbol("laplacian", 1), u0, -0.1),
        DomainError);
    u0.data[5] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(
        spectral::evolve_spectral(ops::builtin_symbol("laplacian", 1), u0, 0.1),
        DomainError);
}

TEST_CASE("spectral adjoint defect is at round-off") {
    const auto g = helpers::grid1(512, 40.0);
    const auto u0 = corpus::band_limited_field(g, 21);
    const auto v0 = corpus::band_limited_field(g, 22);
    const double d = spectral::semigroup_adjoint_check(
        ops::builtin_symbol("log_bessel", 1), u0, v0, 0.5);
    CHECK(d <= 1e-10);
    const double same = spectral::semigroup_adjoint_check(
        ops::builtin_symbol("log_bessel", 1), u0, u0, 0.5);
    CHECK(same == 0.0);
}
