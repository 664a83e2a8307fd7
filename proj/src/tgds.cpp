#include "edgeboost/tgds.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "edgeboost/errors.hpp"

namespace edgeboost {

namespace {

void put_u16(std::ostream& out, std::uint16_t v) {
    char b[2] = {static_cast<char>(v & 0xFF), static_cast<char>(v >> 8)};
    out.write(b, 2);
}

void put_u32(std::ostream& out, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(b, 4);
}

void put_f64(std::ostream& out, double v) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xFF);
    out.write(b, 8);
}

void read_exact(std::istream& in, char* buf, std::size_t n, const char* what) {
    in.read(buf, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) {
        throw FormatError(FormatError::Kind::kTruncated,
                          std::string("dataset stream truncated while reading ") + what);
    }
}

std::uint16_t get_u16(std::istream& in, const char* what) {
    unsigned char b[2];
    read_exact(in, reinterpret_cast<char*>(b), 2, what);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

std::uint32_t get_u32(std::istream& in, const char* what) {
    unsigned char b[4];
    read_exact(in, reinterpret_cast<char*>(b), 4, what);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

double get_f64(std::istream& in, const char* what) {
    unsigned char b[8];
    read_exact(in, reinterpret_cast<char*>(b), 8, what);
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) bits = (bits << 8) | b[i];
    return std::bit_cast<double>(bits);
}

}  // namespace

void write_tgds(const Dataset& ds, std::ostream& out) {
    out.write("TGDS", 4);
    out.put(static_cast<char>(kDatasetFormatVersion));
    put_u32(out, static_cast<std::uint32_t>(ds.n_rows));
    put_u32(out, static_cast<std::uint32_t>(ds.n_cols));

    for (const std::string& name : ds.column_names) {
        put_u16(out, static_cast<std::uint16_t>(name.size()));
        out.write(name.data(), static_cast<std::streamsize>(name.size()));
    }

    for (std::size_t i = 0; i < ds.values.size(); ++i) {
        put_f64(out, ds.missing[i] != 0 ? 0.0 : ds.values[i]);
    }

    const std::size_t n_cells = ds.n_rows * ds.n_cols;
    std::vector<std::uint8_t> mask((n_cells + 7) / 8, 0);
    for (std::size_t k = 0; k < n_cells; ++k) {
        if (ds.missing[k] != 0) mask[k / 8] |= static_cast<std::uint8_t>(1u << (k % 8));
    }
    out.write(reinterpret_cast<const char*>(mask.data()),
              static_cast<std::streamsize>(mask.size()));
}

Dataset read_tgds(std::istream& in) {
    char magic[4];
    read_exact(in, magic, 4, "magic");
    if (std::memcmp(magic, "TGDS", 4) != 0) {
        throw FormatError(FormatError::Kind::kBadMagic, "bad magic: not a .tgds dataset file");
    }
    unsigned char version;
    read_exact(in, reinterpret_cast<char*>(&version), 1, "version");
    if (version != kDatasetFormatVersion) {
        throw FormatError(FormatError::Kind::kBadVersion,
                          "unsupported dataset format version " + std::to_string(version));
    }

    Dataset ds;
    ds.n_rows = get_u32(in, "row count");
    ds.n_cols = get_u32(in, "column count");

    ds.column_names.resize(ds.n_cols);
    for (std::size_t c = 0; c < ds.n_cols; ++c) {
        std::uint16_t len = get_u16(in, "column name length");
        ds.column_names[c].resize(len);
        if (len > 0) read_exact(in, ds.column_names[c].data(), len, "column name");
    }

    const std::size_t n_cells = ds.n_rows * ds.n_cols;
    ds.values.resize(n_cells);
    for (std::size_t k = 0; k < n_cells; ++k) ds.values[k] = get_f64(in, "values");

    std::vector<std::uint8_t> mask((n_cells + 7) / 8);
    if (!mask.empty()) {
        read_exact(in, reinterpret_cast<char*>(mask.data()), mask.size(), "missing bitmask");
    }
    ds.missing.resize(n_cells);
    for (std::size_t k = 0; k < n_cells; ++k) {
        ds.missing[k] = static_cast<std::uint8_t>((mask[k / 8] >> (k % 8)) & 1u);
    }

    return ds;
}

void save_dataset(const Dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_tgds(ds, out);
    if (!out) throw IoError("failed writing dataset to '" + path + "'");
}

Dataset load_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open dataset file '" + path + "'");
    return read_tgds(in);
}

}  // namespace edgeboost
