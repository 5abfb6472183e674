#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

namespace levylab::grid {

/// Uniform periodic grid on [0, L)^N, row-major flattening, N in {1,2,3}.
struct TorusGrid {
    int dim = 1;
    int n = 256;
    double length = 20.0;

    std::size_t size() const {
        std::size_t s = 1;
        for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(n);
        return s;
    }
    double h() const { return length / n; }
    double cell_volume() const;

    /// Signed displacement reduced to (-L/2, L/2].
    double wrap(double d) const;

    std::array<int, 3> unflatten(std::size_t idx) const;
    std::size_t flatten(const std::array<int, 3>& m) const;

    /// Coordinates of a grid point (unused axes zero).
    std::array<double, 3> position(std::size_t idx) const;

    /// DFT frequency 2 pi k'/L for axis index j, with k' the signed alias
    /// in [-n/2, n/2).
    double frequency(int j) const;

    /// |xi| of the frequency vector for a flattened index.
    double frequency_norm(std::size_t idx) const;
};

bool same_grid(const TorusGrid& a, const TorusGrid& b);

struct ScalarField {
    TorusGrid grid;
    std::vector<double> data;
};

ScalarField make_field(const TorusGrid& g);
ScalarField sample(const TorusGrid& g,
                   const std::function<double(const std::array<double, 3>&)>& f);

/// (sum |f_i|^p h^N)^{1/p}; p = infinity gives max |f_i|. Requires p >= 1.
double lp_norm(const ScalarField& f, double p);

/// sum f_i h^N.
double mass(const ScalarField& f);

/// h^N-weighted inner product.
double inner(const ScalarField& f, const ScalarField& g);

/// Fraction of the |f| mass inside the centered box of side frac * L per
/// axis. Gauges how much of a localized field has wrapped around the torus.
double box_mass_fraction(const ScalarField& f, double frac);

} // namespace levylab::grid
