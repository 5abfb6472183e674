#include "levylab/io.hpp"

#include "levylab/errors.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

namespace levylab::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_text_atomic(const std::filesystem::path& path, const std::string& body) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw NumericsError("write_text_atomic: cannot open " + tmp.string());
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
        if (!out) throw NumericsError("write_text_atomic: short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

namespace {

void put_u64_le(std::string& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64_le(std::string& buf, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    put_u64_le(buf, bits);
}

std::uint64_t get_u64_le(const char* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[i])) << (8 * i);
    return v;
}

double get_f64_le(const char* p) {
    const std::uint64_t bits = get_u64_le(p);
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
}

} // namespace

void write_field_binary(const std::filesystem::path& path, const grid::ScalarField& f) {
    std::string buf;
    buf.reserve(24 + 8 * f.data.size());
    put_u64_le(buf, static_cast<std::uint64_t>(f.grid.dim));
    put_u64_le(buf, static_cast<std::uint64_t>(f.grid.n));
    put_f64_le(buf, f.grid.length);
    for (double v : f.data) put_f64_le(buf, v);
    write_text_atomic(path, buf);
}

grid::ScalarField read_field_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("read_field_binary: cannot open " + path.string());
    std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buf.size() < 24) throw DomainError("read_field_binary: truncated header");

    grid::TorusGrid g;
    g.dim = static_cast<int>(get_u64_le(buf.data()));
    g.n = static_cast<int>(get_u64_le(buf.data() + 8));
    g.length = get_f64_le(buf.data() + 16);
    grid::ScalarField f = grid::make_field(g);
    if (buf.size() != 24 + 8 * f.data.size())
        throw DomainError("read_field_binary: payload size does not match header");
    for (std::size_t i = 0; i < f.data.size(); ++i)
        f.data[i] = get_f64_le(buf.data() + 24 + 8 * i);
    return f;
}

std::string CsvDoc::render() const {
    std::string out;
    for (const std::string& c : comments) {
        out += "# ";
        out += c;
        out += '\n';
    }
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (j) out += ',';
        out += columns[j];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ',';
            out += format_double(row[j]);
        }
        out += '\n';
    }
    return out;
}

void CsvDoc::write(const std::filesystem::path& path) const {
    write_text_atomic(path, render());
}

void write_field_csv(const std::filesystem::path& path, const grid::ScalarField& f,
                     const std::vector<std::string>& comments) {
    if (f.grid.dim != 1)
        throw DomainError("write_field_csv: CSV field dumps are one-dimensional only");
    CsvDoc doc;
    doc.comments = comments;
    doc.columns = {"x", "u"};
    doc.rows.reserve(f.data.size());
    for (std::size_t i = 0; i < f.data.size(); ++i)
        doc.rows.push_back({f.grid.position(i)[0], f.data[i]});
    doc.write(path);
}

} // namespace levylab::io
