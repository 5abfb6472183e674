#pragma once

#include "levylab/grid.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace levylab::io {

/// Shortest round-trip decimal rendering (%.17g).
std::string format_double(double v);

/// FNV-1a 64-bit, used as the config fingerprint in CSV headers.
std::uint64_t fnv1a64(std::string_view s);
std::string hash_hex(std::uint64_t h);

/// Writes to <path>.tmp in one go, then renames over path.
void write_text_atomic(const std::filesystem::path& path, const std::string& body);

/// Flat binary field layout: uint64 N, uint64 n, float64 L (all
/// little-endian), then the row-major float64 payload.
void write_field_binary(const std::filesystem::path& path, const grid::ScalarField& f);
grid::ScalarField read_field_binary(const std::filesystem::path& path);

/// CSV document with "# " comment lines, a header row, and %.17g cells.
struct CsvDoc {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::string render() const;
    void write(const std::filesystem::path& path) const;
};

/// (x, u) CSV for one-dimensional fields.
void write_field_csv(const std::filesystem::path& path, const grid::ScalarField& f,
                     const std::vector<std::string>& comments = {});

} // namespace levylab::io
