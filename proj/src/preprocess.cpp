#include "edgeboost/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "edgeboost/errors.hpp"

namespace edgeboost {

Matrix Matrix::take_rows(std::span<const std::uint32_t> indices) const {
    Matrix out(indices.size(), n_cols);
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const double* src = data.data() + static_cast<std::size_t>(indices[i]) * n_cols;
        std::copy(src, src + n_cols, out.data.begin() + i * n_cols);
    }
    return out;
}

CleanXY handle_missing(const Dataset& features, const TargetColumn& target) {
    if (features.n_rows != target.values.size() || target.values.size() != target.missing.size()) {
        throw ValueError("handle_missing: features and target row counts differ");
    }

    std::vector<std::uint32_t> keep;
    keep.reserve(features.n_rows);
    for (std::size_t r = 0; r < features.n_rows; ++r) {
        if (target.missing[r] == 0) keep.push_back(static_cast<std::uint32_t>(r));
    }

    CleanXY out;
    out.rows_dropped = features.n_rows - keep.size();

    Dataset& f = out.features;
    f.column_names = features.column_names;
    f.n_rows = keep.size();
    f.n_cols = features.n_cols;
    f.values.resize(f.n_rows * f.n_cols);
    f.missing.assign(f.n_rows * f.n_cols, 0);
    out.target.resize(keep.size());

    for (std::size_t i = 0; i < keep.size(); ++i) {
        std::size_t r = keep[i];
        out.target[i] = target.values[r];
        for (std::size_t c = 0; c < f.n_cols; ++c) {
            f.values[i * f.n_cols + c] = features.value_at(r, c);
        }
    }

    // Column medians over the observed entries of the surviving rows.
    std::vector<double> observed;
    for (std::size_t c = 0; c < f.n_cols; ++c) {
        observed.clear();
        for (std::size_t i = 0; i < keep.size(); ++i) {
            if (!features.is_missing(keep[i], c)) observed.push_back(f.values[i * f.n_cols + c]);
        }
        bool column_has_missing = observed.size() < keep.size();
        if (!column_has_missing) continue;
        if (observed.empty()) {
            throw ValueError("handle_missing: feature column '" + f.column_names[c] +
                             "' has no observed values after row filtering");
        }
        std::sort(observed.begin(), observed.end());
        std::size_t m = observed.size();
        double median = (m % 2 == 1) ? observed[m / 2]
                                     : 0.5 * (observed[m / 2 - 1] + observed[m / 2]);
        for (std::size_t i = 0; i < keep.size(); ++i) {
            if (features.is_missing(keep[i], c)) {
                f.values[i * f.n_cols + c] = median;
                ++out.cells_imputed;
            }
        }
    }

    return out;
}

namespace {

MinMax column_minmax(const Matrix& x, std::size_t col, std::span<const std::uint32_t> rows) {
    MinMax mm{x.at(rows.empty() ? 0 : rows[0], col), x.at(rows.empty() ? 0 : rows[0], col)};
    auto fold = [&](double v) {
        mm.min = std::min(mm.min, v);
        mm.max = std::max(mm.max, v);
    };
    if (rows.empty()) {
        for (std::size_t r = 0; r < x.n_rows; ++r) fold(x.at(r, col));
    } else {
        for (std::uint32_t r : rows) fold(x.at(r, col));
    }
    return mm;
}

MinMax span_minmax(std::span<const double> v, std::span<const std::uint32_t> rows) {
    MinMax mm{rows.empty() ? v[0] : v[rows[0]], rows.empty() ? v[0] : v[rows[0]]};
    auto fold = [&](double x) {
        mm.min = std::min(mm.min, x);
        mm.max = std::max(mm.max, x);
    };
    if (rows.empty()) {
        for (double x : v) fold(x);
    } else {
        for (std::uint32_t r : rows) fold(v[r]);
    }
    return mm;
}

}  // namespace

ScalerParams fit_scaler_rows(const Matrix& features, std::span<const double> target,
                             std::span<const std::uint32_t> rows) {
    if (features.n_rows == 0 || target.empty()) {
        throw ValueError("fit_scaler: empty input");
    }
    if (features.n_rows != target.size()) {
        throw ValueError("fit_scaler: features and target row counts differ");
    }
    ScalerParams params;
    params.features.resize(features.n_cols);
    for (std::size_t c = 0; c < features.n_cols; ++c) {
        params.features[c] = column_minmax(features, c, rows);
    }
    params.target = span_minmax(target, rows);
    return params;
}

ScalerParams fit_scaler(const Matrix& features, std::span<const double> target) {
    return fit_scaler_rows(features, target, {});
}

double scale_value(double x, MinMax mm) {
    double range = mm.max - mm.min;
    if (range == 0.0) return 0.0;
    return (x - mm.min) / range;
}

double unscale_value(double scaled, MinMax mm) {
    return scaled * (mm.max - mm.min) + mm.min;
}

Matrix apply_scaler(const Matrix& x, const ScalerParams& params) {
    if (x.n_cols != params.features.size()) {
        throw ValueError("apply_scaler: matrix has " + std::to_string(x.n_cols) +
                         " columns, scaler expects " + std::to_string(params.features.size()));
    }
    Matrix out(x.n_rows, x.n_cols);
    for (std::size_t r = 0; r < x.n_rows; ++r) {
        for (std::size_t c = 0; c < x.n_cols; ++c) {
            out.at(r, c) = scale_value(x.at(r, c), params.features[c]);
        }
    }
    return out;
}

std::vector<double> apply_target_scaler(std::span<const double> y, const ScalerParams& params) {
    std::vector<double> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = scale_value(y[i], params.target);
    return out;
}

std::vector<double> invert_target_scaler(std::span<const double> scaled,
                                         const ScalerParams& params) {
    std::vector<double> out(scaled.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) out[i] = unscale_value(scaled[i], params.target);
    return out;
}

std::size_t count_out_of_range(const Matrix& scaled) {
    std::size_t count = 0;
    for (double v : scaled.data) {
        if (v < 0.0 || v > 1.0) ++count;
    }
    return count;
}

Matrix to_matrix(const Dataset& features) {
    for (std::uint8_t m : features.missing) {
        if (m != 0) throw ValueError("to_matrix: dataset still carries missing cells");
    }
    Matrix out(features.n_rows, features.n_cols);
    out.data = features.values;
    return out;
}

SplitIndices split_rows(std::size_t n_rows, const SplitSpec& spec) {
    if (n_rows < 10) {
        throw ValueError("split_rows: need at least 10 rows, got " + std::to_string(n_rows));
    }
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw ValueError("split_rows: train_fraction must lie in (0, 1)");
    }

    std::size_t n_train = static_cast<std::size_t>(
        std::floor(spec.train_fraction * static_cast<double>(n_rows)));

    std::vector<std::uint32_t> order(n_rows);
    std::iota(order.begin(), order.end(), 0u);

    if (spec.mode == SplitMode::kShuffled) {
        // Fisher-Yates with raw mt19937_64 draws; the modulo bias is far
        // below reproducibility concerns and the stream is portable.
        std::mt19937_64 rng(spec.seed);
        for (std::size_t i = n_rows - 1; i > 0; --i) {
            std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
            std::swap(order[i], order[j]);
        }
    }

    SplitIndices out;
    out.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    out.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

ScalerParams identity_scaler(std::size_t n_features) {
    ScalerParams params;
    params.features.assign(n_features, MinMax{0.0, 1.0});
    params.target = MinMax{0.0, 1.0};
    return params;
}

}  // namespace edgeboost
