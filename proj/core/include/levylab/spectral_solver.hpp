#pragma once

#include "levylab/fft.hpp"
#include "levylab/grid.hpp"
#include "levylab/symbols.hpp"

namespace levylab::spectral {

/// exp(-t m(|xi|)) applied in Fourier space; exact for any t >= 0, no time
/// stepping. Non-Levy symbols (negative at low frequency, e.g. the pure
/// Riesz log symbol) are admitted only for 0 <= t < dim/2, where the
/// continuum flow still maps nice data to functions.
grid::ScalarField evolve_spectral(const ops::LevySymbol& symbol, const grid::ScalarField& u0,
                                  double t);

/// |<u0, S_t v0> - <S_t u0, v0>| / (||u0||_2 ||v0||_2) for the spectral
/// propagator.
double semigroup_adjoint_check(const ops::LevySymbol& symbol, const grid::ScalarField& u0,
                               const grid::ScalarField& v0, double t);

} // namespace levylab::spectral
