#include "levylab/corpus.hpp"

#include "levylab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace levylab::corpus {

namespace {

double wrapped_center_distance(const grid::TorusGrid& g, const std::array<double, 3>& x) {
    const double c = 0.5 * g.length;
    double d2 = 0.0;
    for (int a = 0; a < g.dim; ++a) {
        const double d = g.wrap(x[a] - c);
        d2 += d * d;
    }
    return std::sqrt(d2);
}

void normalize_peak(grid::ScalarField& f) {
    double peak = 0.0;
    for (double v : f.data) peak = std::max(peak, std::fabs(v));
    if (peak > 0.0)
        for (double& v : f.data) v /= peak;
}

} // namespace

grid::ScalarField gaussian_bump(const grid::TorusGrid& g, double width) {
    if (width <= 0.0) throw DomainError("gaussian_bump: width must be positive");
    return grid::sample(g, [&](const std::array<double, 3>& x) {
        const double d = wrapped_center_distance(g, x);
        return std::exp(-d * d / (width * width));
    });
}

grid::ScalarField smoothed_indicator(const grid::TorusGrid& g, double radius,
                                     double sharpness) {
    if (radius <= 0.0 || sharpness <= 0.0)
        throw DomainError("smoothed_indicator: radius and sharpness must be positive");
    return grid::sample(g, [&](const std::array<double, 3>& x) {
        const double d = wrapped_center_distance(g, x);
        // Algebraically 0.5 (1 - tanh(z)), but this form keeps the tail
        // strictly positive until exp(2z) overflows, where tanh would
        // round to 1 long before.
        return 1.0 / (1.0 + std::exp(2.0 * (d - radius) / sharpness));
    });
}

grid::ScalarField band_limited_field(const grid::TorusGrid& g, std::uint64_t seed,
                                     int max_mode) {
    if (max_mode < 1) throw DomainError("band_limited_field: max_mode must be positive");
    // Half-space mode list (first nonzero component positive) so each wave
    // appears once; amplitudes sampled in a fixed order.
    struct Mode {
        std::array<int, 3> k;
        double amp;
        double phase;
    };
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);

    const int kcap = g.dim == 1 ? max_mode : std::min(max_mode, 4);
    std::vector<Mode> modes;
    const int lo = -kcap;
    for (int k0 = 0; k0 <= kcap; ++k0)
        for (int k1 = (g.dim > 1 ? lo : 0); k1 <= (g.dim > 1 ? kcap : 0); ++k1)
            for (int k2 = (g.dim > 2 ? lo : 0); k2 <= (g.dim > 2 ? kcap : 0); ++k2) {
                if (k0 == 0 && k1 == 0 && k2 == 0) continue;
                if (k0 == 0 && (k1 < 0 || (k1 == 0 && k2 < 0))) continue;
                const double knorm2 = double(k0) * k0 + double(k1) * k1 + double(k2) * k2;
                Mode m;
                m.k = {k0, k1, k2};
                m.amp = gauss(rng) / (1.0 + knorm2);
                m.phase = angle(rng);
                modes.push_back(m);
            }

    const double twopi_l = 2.0 * M_PI / g.length;
    const double env_w = g.length / 8.0;
    auto f = grid::sample(g, [&](const std::array<double, 3>& x) {
        double s = 0.0;
        for (const Mode& m : modes) {
            double kx = 0.0;
            for (int a = 0; a < g.dim; ++a) kx += m.k[a] * x[a];
            s += m.amp * std::cos(twopi_l * kx + m.phase);
        }
        const double d = wrapped_center_distance(g, x);
        return s * std::exp(-d * d / (env_w * env_w));
    });
    normalize_peak(f);
    return f;
}

std::vector<NamedField> seeded_fields(const grid::TorusGrid& g, int count,
                                      std::uint64_t seed) {
    if (count < 0) throw DomainError("seeded_fields: count must be nonnegative");
    std::vector<NamedField> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        char id[16];
        std::snprintf(id, sizeof id, "band-%02d", i);
        out.push_back({id, band_limited_field(g, seed + static_cast<std::uint64_t>(i))});
    }
    return out;
}

std::vector<NamedField> default_corpus(const grid::TorusGrid& g) {
    std::vector<NamedField> out;
    const double L = g.length;
    const double widths[3] = {L / 40.0, L / 20.0, L / 10.0};
    const double radii[3] = {L / 16.0, L / 8.0, 3.0 * L / 16.0};
    for (int i = 0; i < 3; ++i) {
        char id[24];
        std::snprintf(id, sizeof id, "gaussian-%d", i);
        out.push_back({id, gaussian_bump(g, widths[i])});
    }
    for (int i = 0; i < 3; ++i) {
        char id[24];
        std::snprintf(id, sizeof id, "plateau-%d", i);
        out.push_back({id, smoothed_indicator(g, radii[i], L / 64.0)});
    }
    auto bands = seeded_fields(g, 20, 0x5eedf00dULL);
    out.insert(out.end(), bands.begin(), bands.end());
    return out;
}

} // namespace levylab::corpus
