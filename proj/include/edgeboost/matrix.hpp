#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace edgeboost {

/// Dense row-major matrix of doubles. The shape every model input takes
/// after preprocessing has removed names and missing-value masks.
struct Matrix {
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;
    std::vector<double> data;  // n_rows * n_cols

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : n_rows(rows), n_cols(cols), data(rows * cols, 0.0) {}

    double at(std::size_t r, std::size_t c) const { return data[r * n_cols + c]; }
    double& at(std::size_t r, std::size_t c) { return data[r * n_cols + c]; }

    std::span<const double> row(std::size_t r) const {
        return {data.data() + r * n_cols, n_cols};
    }

    /// Copies the selected rows into a new matrix, preserving order.
    Matrix take_rows(std::span<const std::uint32_t> indices) const;
};

}  // namespace edgeboost
