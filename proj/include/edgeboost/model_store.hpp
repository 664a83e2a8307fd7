#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "edgeboost/gbrt.hpp"

namespace edgeboost {

// .tgbm binary layout, little-endian throughout:
//
//   header (18 bytes)
//     magic         "TGBM"      4 bytes
//     version       = 1         1 byte
//     flags         = 0         1 byte (reserved)
//     n_features    u16
//     n_trees       u16
//     learning_rate f32
//     base_score    f32
//   scaler block ((n_features + 1) * 8 bytes)
//     per feature column, then the target: min f32, max f32
//   per tree
//     node_count    u16
//     node_count records of 10 bytes each:
//       feature     u16 (0xFFFF marks a leaf)
//       value       f32 (threshold for internal nodes, leaf value for leaves)
//       left        u16 (0 for leaves)
//       right       u16 (0 for leaves)
//
// Values are trained in 64-bit and rounded to 32-bit exactly once, here;
// predictions after a load therefore define the reference outputs. The
// layout is canonical: equal ensembles serialize to equal bytes.

inline constexpr std::size_t kModelHeaderBytes = 18;
inline constexpr std::uint16_t kLeafFeatureTag = 0xFFFF;
inline constexpr std::uint8_t kModelFormatVersion = 1;

/// Serializes an ensemble. Throws ValueError when the scaler column count
/// does not match n_features, FormatError(kLimitExceeded) when a tree
/// exceeds 65534 nodes or the model exceeds the u16 header fields.
std::vector<std::uint8_t> serialize(const Ensemble& model);

/// Reconstructs an ensemble. Throws FormatError with a distinct kind for a
/// bad magic, unsupported version, truncated stream (naming the tree index)
/// or out-of-range child index.
Ensemble deserialize(std::span<const std::uint8_t> bytes);

/// File size in kB: byte length / 1024.
double model_size_kb(std::span<const std::uint8_t> bytes);

/// Convenience file I/O. Throws IoError on filesystem failures.
void save_model(const Ensemble& model, const std::string& path);
Ensemble load_model(const std::string& path);

}  // namespace edgeboost
