#pragma once

#include <iosfwd>
#include <string>

#include "edgeboost/dataset.hpp"

namespace edgeboost {

// .tgds intermediate dataset layout, little-endian:
//   magic "TGDS", version u8 (=1)
//   n_rows u32, n_cols u32
//   column names: u16 length + UTF-8 bytes, one per column
//   values: n_rows * n_cols f64, row-major
//   missing bitmask: ceil(n_rows * n_cols / 8) bytes, cell k = bit (k % 8)
//     of byte (k / 8), k = row * n_cols + col
// Missing cells always store 0.0 in the value block, so the writer is a
// pure function of the dataset contents.

inline constexpr std::uint8_t kDatasetFormatVersion = 1;

void write_tgds(const Dataset& ds, std::ostream& out);
Dataset read_tgds(std::istream& in);

/// File variants. Throw IoError on filesystem failures, FormatError on
/// corrupt streams.
void save_dataset(const Dataset& ds, const std::string& path);
Dataset load_dataset(const std::string& path);

}  // namespace edgeboost
