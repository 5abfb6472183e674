#include "doctest.h"

#include "levylab/errors.hpp"
#include "levylab/quadrature.hpp"

#include "support/helpers.hpp"

#include <cmath>

using namespace levylab;
using helpers::rel_err;

TEST_CASE("smooth finite integrals") {
    auto r = quad::integrate([](double x) { return std::sin(x); }, 0.0, 3.14159265358979323846);
    CHECK(rel_err(r.value, 2.0) < 1e-12);
    CHECK(r.abs_error < 1e-8);

    r = quad::integrate([](double x) { return x * x; }, -1.0, 2.0);
    CHECK(rel_err(r.value, 3.0) < 1e-12);
}

TEST_CASE("integrable endpoint singularity") {
    auto r = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0);
    CHECK(rel_err(r.value, 2.0) < 1e-9);
    r = quad::integrate([](double x) { return std::log(x); }, 0.0, 1.0);
    CHECK(std::fabs(r.value + 1.0) < 1e-9);
}

TEST_CASE("upper-infinite integrals") {
    auto r = quad::integrate_upper([](double x) { return std::exp(-x); }, 0.0);
    CHECK(rel_err(r.value, 1.0) < 1e-12);

    // Damped oscillation: int_0^inf e^{-x} cos x dx = 1/2.
    r = quad::integrate_upper([](double x) { return std::exp(-x) * std::cos(x); }, 0.0);
    CHECK(rel_err(r.value, 0.5) < 1e-10);

    // Gaussian from an offset start.
    const double pi = 3.14159265358979323846;
    r = quad::integrate_upper([](double x) { return std::exp(-x * x); }, -1.0);
    const double want = 0.5 * std::sqrt(pi) * (1.0 + std::erf(1.0));
    CHECK(rel_err(r.value, want) < 1e-11);
}

TEST_CASE("reported abs_error bounds the true error on known values") {
    auto r = quad::integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
    const double truth = std::exp(1.0) - 1.0;
    CHECK(std::fabs(r.value - truth) <= std::max(r.abs_error, 1e-14));
}

TEST_CASE("tolerance knobs are honoured") {
    quad::QuadratureSpec loose;
    loose.rel_tol = 1e-4;
    auto r = quad::integrate([](double x) { return std::cos(7.0 * x); }, 0.0, 10.0,
                             loose);
    CHECK(std::fabs(r.value - std::sin(70.0) / 7.0) < 1e-4);
}

TEST_CASE("nested integration is re-entrant") {
    // The outer integrand runs a full inner quadrature at every node; the
    // two adaptive runs must not share workspace state.
    auto inner = [](double y) {
        return quad::integrate([y](double s) { return std::exp(-y * s); }, 0.0, 1.0).value;
    };
    auto r = quad::integrate(inner, 0.5, 2.0);
    // int_{1/2}^{2} (1 - e^{-y})/y dy
    auto want = quad::integrate([](double y) { return (1.0 - std::exp(-y)) / y; }, 0.5, 2.0);
    CHECK(rel_err(r.value, want.value) < 1e-9);
}

TEST_CASE("hopeless integrand raises NumericsError") {
    quad::QuadratureSpec tight;
    tight.rel_tol = 1e-13;
    tight.max_subdivisions = 8;
    CHECK_THROWS_AS(quad::integrate([](double x) { return std::cos(500.0 * x * x); }, 0.0,
                                    20.0, tight),
                    NumericsError);
}

TEST_CASE("spec defaults") {
    quad::QuadratureSpec spec;
    CHECK(spec.rel_tol == 1e-9);
    CHECK(spec.abs_tol == 0.0);
    CHECK(spec.max_subdivisions == (1 << 15));
    CHECK(spec.peak_cutoff == 1e-16);
}
