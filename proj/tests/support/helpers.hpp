#pragma once

#include "levylab/corpus.hpp"
#include "levylab/grid.hpp"

#include <cmath>
#include <cstdint>

namespace helpers {

inline double rel_err(double got, double want) {
    const double scale = std::max(std::fabs(want), 1e-300);
    return std::fabs(got - want) / scale;
}

inline levylab::grid::TorusGrid grid1(int n = 1024, double length = 40.0) {
    levylab::grid::TorusGrid g;
    g.dim = 1;
    g.n = n;
    g.length = length;
    return g;
}

inline levylab::grid::TorusGrid grid_nd(int dim, int n, double length) {
    levylab::grid::TorusGrid g;
    g.dim = dim;
    g.n = n;
    g.length = length;
    return g;
}

/// exp(-(x-c)^2 / (2 w^2)) centered on the box (the heat-kernel-friendly
/// width convention; corpus::gaussian_bump uses exp(-d^2/w^2)).
inline levylab::grid::ScalarField gaussian_sigma(const levylab::grid::TorusGrid& g, double w) {
    const double c = 0.5 * g.length;
    return levylab::grid::sample(g, [&](const std::array<double, 3>& x) {
        double d2 = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            const double dd = g.wrap(x[static_cast<std::size_t>(d)] - c);
            d2 += dd * dd;
        }
        return std::exp(-d2 / (2.0 * w * w));
    });
}

/// splitmix64: cheap deterministic hash for seeding per-pair noise.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic symmetric noise in [0, 1] from an unordered pair of grid
/// positions (bit patterns hashed order-independently).
inline double pair_noise(const std::array<double, 3>& x, const std::array<double, 3>& y) {
    std::uint64_t hx = 0;
    std::uint64_t hy = 0;
    for (int d = 0; d < 3; ++d) {
        std::uint64_t bx;
        std::uint64_t by;
        static_assert(sizeof(double) == sizeof(std::uint64_t));
        __builtin_memcpy(&bx, &x[static_cast<std::size_t>(d)], sizeof bx);
        __builtin_memcpy(&by, &y[static_cast<std::size_t>(d)], sizeof by);
        hx = splitmix64(hx ^ bx);
        hy = splitmix64(hy ^ by);
    }
    const std::uint64_t lo = hx < hy ? hx : hy;
    const std::uint64_t hi = hx < hy ? hy : hx;
    const std::uint64_t mix = splitmix64(lo ^ splitmix64(hi));
    return static_cast<double>(mix >> 11) * 0x1.0p-53;
}

} // namespace helpers
