#include "levylab/grid.hpp"

#include "levylab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace levylab::grid {

double TorusGrid::cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < dim; ++d) v *= h();
    return v;
}

double TorusGrid::wrap(double d) const {
    d = std::fmod(d, length);
    if (d > 0.5 * length) d -= length;
    if (d <= -0.5 * length) d += length;
    return d;
}

std::array<int, 3> TorusGrid::unflatten(std::size_t idx) const {
    std::array<int, 3> m{0, 0, 0};
    for (int d = dim - 1; d >= 0; --d) {
        m[d] = static_cast<int>(idx % static_cast<std::size_t>(n));
        idx /= static_cast<std::size_t>(n);
    }
    return m;
}

std::size_t TorusGrid::flatten(const std::array<int, 3>& m) const {
    std::size_t idx = 0;
    for (int d = 0; d < dim; ++d)
        idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(m[d]);
    return idx;
}

std::array<double, 3> TorusGrid::position(std::size_t idx) const {
    const auto m = unflatten(idx);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int d = 0; d < dim; ++d) x[d] = m[d] * h();
    return x;
}

double TorusGrid::frequency(int j) const {
    const int k = j < (n + 1) / 2 ? j : j - n;
    return 2.0 * M_PI * k / length;
}

double TorusGrid::frequency_norm(std::size_t idx) const {
    const auto m = unflatten(idx);
    double s = 0.0;
    for (int d = 0; d < dim; ++d) {
        const double f = frequency(m[d]);
        s += f * f;
    }
    return std::sqrt(s);
}

bool same_grid(const TorusGrid& a, const TorusGrid& b) {
    return a.dim == b.dim && a.n == b.n && a.length == b.length;
}

namespace {

void check_grid(const TorusGrid& g) {
    if (g.dim < 1 || g.dim > 3) throw DomainError("grid: dim must be 1, 2 or 3");
    if (g.n < 2 || (g.n & (g.n - 1)) != 0) throw DomainError("grid: n must be a power of two");
    if (g.length <= 0.0) throw DomainError("grid: length must be positive");
}

} // namespace

ScalarField make_field(const TorusGrid& g) {
    check_grid(g);
    return {g, std::vector<double>(g.size(), 0.0)};
}

ScalarField sample(const TorusGrid& g,
                   const std::function<double(const std::array<double, 3>&)>& f) {
    ScalarField u = make_field(g);
    for (std::size_t i = 0; i < u.data.size(); ++i) u.data[i] = f(g.position(i));
    return u;
}

double lp_norm(const ScalarField& f, double p) {
    if (p < 1.0) throw DomainError("lp_norm: p must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f.data) m = std::max(m, std::fabs(v));
        return m;
    }
    double s = 0.0;
    for (double v : f.data) s += std::pow(std::fabs(v), p);
    return std::pow(s * f.grid.cell_volume(), 1.0 / p);
}

double mass(const ScalarField& f) {
    double s = 0.0;
    for (double v : f.data) s += v;
    return s * f.grid.cell_volume();
}

double inner(const ScalarField& f, const ScalarField& g) {
    if (!same_grid(f.grid, g.grid)) throw DomainError("inner: grid mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < f.data.size(); ++i) s += f.data[i] * g.data[i];
    return s * f.grid.cell_volume();
}

double box_mass_fraction(const ScalarField& f, double frac) {
    if (frac <= 0.0 || frac > 1.0) throw DomainError("box_mass_fraction: frac in (0, 1]");
    const auto& g = f.grid;
    const double c = 0.5 * g.length;
    const double half = 0.5 * frac * g.length;
    double inside = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < f.data.size(); ++i) {
        const double a = std::fabs(f.data[i]);
        total += a;
        const auto x = g.position(i);
        bool in = true;
        for (int d = 0; d < g.dim; ++d)
            if (std::fabs(g.wrap(x[d] - c)) > half) in = false;
        if (in) inside += a;
    }
    return total > 0.0 ? inside / total : 0.0;
}

} // namespace levylab::grid
