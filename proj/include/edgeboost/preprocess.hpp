#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "edgeboost/dataset.hpp"
#include "edgeboost/matrix.hpp"

namespace edgeboost {

/// Per-column scaling bounds. (0, 1) acts as the identity transform.
struct MinMax {
    double min = 0.0;
    double max = 1.0;
};

/// Min-max bounds for every feature column plus the target column.
/// Embedded in the serialized model so inference needs no side files.
struct ScalerParams {
    std::vector<MinMax> features;
    MinMax target;
};

enum class SplitMode { kShuffled, kChronological };

struct SplitSpec {
    double train_fraction = 0.7;
    std::uint64_t seed = 42;
    SplitMode mode = SplitMode::kShuffled;
};

struct SplitIndices {
    std::vector<std::uint32_t> train;
    std::vector<std::uint32_t> test;
};

/// Missing-value policy output: rows with a missing target dropped, the
/// remaining missing feature cells replaced by their column median.
struct CleanXY {
    Dataset features;              // mask all clear
    std::vector<double> target;    // aligned with features rows
    std::size_t rows_dropped = 0;
    std::size_t cells_imputed = 0;
};

/// Applies the missing-value policy. Medians are computed per column over
/// the non-missing entries of the surviving rows; non-missing cells are
/// never altered. Throws ValueError if a feature column has no observed
/// value left after row filtering (names the column), or on row-count
/// mismatch between features and target.
CleanXY handle_missing(const Dataset& features, const TargetColumn& target);

/// Per-column min/max over all given rows, features and target alike.
/// Requires missing-free input.
ScalerParams fit_scaler(const Matrix& features, std::span<const double> target);

/// Restricted fit over a row subset (train-only scaling mode).
ScalerParams fit_scaler_rows(const Matrix& features, std::span<const double> target,
                             std::span<const std::uint32_t> rows);

/// x' = (x - min) / (max - min); degenerate columns (max == min) map to 0.
/// Out-of-range inputs are NOT clamped; see count_out_of_range.
double scale_value(double x, MinMax mm);

/// Inverse transform; degenerate columns invert to the constant.
double unscale_value(double scaled, MinMax mm);

/// Scales every column of x. Throws ValueError on column-count mismatch.
Matrix apply_scaler(const Matrix& x, const ScalerParams& params);

std::vector<double> apply_target_scaler(std::span<const double> y, const ScalerParams& params);
std::vector<double> invert_target_scaler(std::span<const double> scaled,
                                         const ScalerParams& params);

/// Number of cells outside [0, 1] after scaling; reported, never clamped.
std::size_t count_out_of_range(const Matrix& scaled);

/// Converts a mask-free Dataset into a dense matrix.
/// Throws ValueError if any cell is still flagged missing.
Matrix to_matrix(const Dataset& features);

/// Disjoint, exhaustive train/test index sets with |train| = floor(f * n).
/// Shuffled mode permutes with Fisher-Yates over a seeded mt19937_64 (the
/// same byte stream on every platform); chronological mode takes the first
/// fraction as train. Both outputs are sorted ascending.
/// Throws ValueError for n_rows < 10.
SplitIndices split_rows(std::size_t n_rows, const SplitSpec& spec);

/// All-(0,1) params: scaling through them is the identity map.
ScalerParams identity_scaler(std::size_t n_features);

}  // namespace edgeboost
