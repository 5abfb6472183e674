#pragma once

#include "levylab/grid.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace levylab::corpus {

/// Bump the version whenever generation changes; it is stamped into CSV
/// headers so sweeps stay comparable across runs.
inline constexpr const char* version = "corpus-v1";

struct NamedField {
    std::string id;
    grid::ScalarField field;
};

/// exp(-|x - c|^2 / w^2) centered at the box midpoint, peak 1.
grid::ScalarField gaussian_bump(const grid::TorusGrid& g, double width);

/// 0.5 (1 - tanh((|x - c| - radius)/sharpness)), evaluated in a form whose
/// tail underflows gradually: a plateau of roughly the given radius with
/// smooth shoulders, strictly positive until exp(2(d - radius)/sharpness)
/// overflows.
grid::ScalarField smoothed_indicator(const grid::TorusGrid& g, double radius, double sharpness);

/// Random trigonometric polynomial (modes up to max_mode per axis, spectral
/// weight 1/(1+|k|^2)) under a Gaussian envelope of width length/8, rescaled
/// to peak amplitude 1. Fully determined by the seed.
grid::ScalarField band_limited_field(const grid::TorusGrid& g, std::uint64_t seed,
                                     int max_mode = 16);

/// count seeded band-limited fields, ids "band-00", "band-01", ...
std::vector<NamedField> seeded_fields(const grid::TorusGrid& g, int count, std::uint64_t seed);

/// The bundled 26-function sweep corpus: three Gaussians (widths L/40, L/20,
/// L/10), three smoothed indicators (radii L/16, L/8, 3L/16), and twenty
/// seeded band-limited fields.
std::vector<NamedField> default_corpus(const grid::TorusGrid& g);

} // namespace levylab::corpus
