#include "levylab/spectral_solver.hpp"

#include "levylab/errors.hpp"

#include <cmath>

namespace levylab::spectral {

grid::ScalarField evolve_spectral(const ops::LevySymbol& symbol, const grid::ScalarField& u0,
                                  double t) {
    if (symbol.dim != u0.grid.dim)
        throw DomainError("evolve_spectral: symbol/grid dimension mismatch");
    if (t < 0.0) throw DomainError("evolve_spectral: t must be nonnegative");
    if (!symbol.is_levy && t >= 0.5 * u0.grid.dim)
        throw DomainError("evolve_spectral: non-Levy symbol admits only t < dim/2");
    for (double v : u0.data)
        if (!std::isfinite(v)) throw DomainError("evolve_spectral: non-finite input field");

    const Fft& fft = fft_for(u0.grid);
    auto c = fft.forward(u0.data);
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double m = symbol.eval(u0.grid.frequency_norm(i));
        c[i] *= std::exp(-t * m);
    }
    grid::ScalarField out;
    out.grid = u0.grid;
    out.data = fft.inverse(c);
    return out;
}

double semigroup_adjoint_check(const ops::LevySymbol& symbol, const grid::ScalarField& u0,
                               const grid::ScalarField& v0, double t) {
    const auto su = evolve_spectral(symbol, u0, t);
    const auto sv = evolve_spectral(symbol, v0, t);
    const double scale = grid::lp_norm(u0, 2.0) * grid::lp_norm(v0, 2.0);
    if (scale == 0.0) return 0.0;
    return std::fabs(grid::inner(u0, sv) - grid::inner(su, v0)) / scale;
}

} // namespace levylab::spectral
