#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace edgeboost {

/// Dialect of the source CSV. The AirQualityUCI export uses ';' between
/// fields and ',' as the decimal mark; both are overridable from the CLI.
/// The dialect has no quoting: fields are split on the delimiter as-is.
struct CsvOptions {
    char delimiter = ';';
    char decimal_separator = ',';
};

/// Parsed but unconverted CSV contents. Cell text is kept verbatim
/// (a European "2,6" stays "2,6"); numeric conversion is to_dataset()'s job.
struct RawTable {
    std::vector<std::string> column_names;
    std::vector<std::vector<std::string>> cells;  // row-major, rectangular
    CsvOptions options;                           // dialect the table was read with

    std::size_t n_rows() const { return cells.size(); }
    std::size_t n_cols() const { return column_names.size(); }
};

/// Fully numeric table with an explicit missing-value mask. Cells flagged
/// missing hold 0.0 as a defined placeholder; cells not flagged are finite.
struct Dataset {
    std::vector<std::string> column_names;
    std::vector<double> values;           // row-major, n_rows * n_cols
    std::vector<std::uint8_t> missing;    // same shape, 1 = missing
    std::size_t n_rows = 0;
    std::size_t n_cols = 0;

    double value_at(std::size_t r, std::size_t c) const { return values[r * n_cols + c]; }
    bool is_missing(std::size_t r, std::size_t c) const { return missing[r * n_cols + c] != 0; }

    /// Index of the named column, -1 if absent.
    int column_index(std::string_view name) const;

    /// Per-column count of missing cells.
    std::vector<std::size_t> missing_counts() const;
};

/// One extracted target column with its missing mask.
struct TargetColumn {
    std::string name;
    std::vector<double> values;
    std::vector<std::uint8_t> missing;
};

struct SelectedXY {
    Dataset features;
    TargetColumn target;
};

/// Reads delimiter-separated text into a RawTable. Trailing columns with an
/// empty header and trailing fully-empty rows are dropped; every surviving
/// row must have the same field count as the header.
///
/// Throws ParseError on ragged rows (with the 1-based line number), empty
/// input, or duplicate column names.
RawTable parse_csv(std::istream& input, const CsvOptions& options = {});
RawTable parse_csv_text(std::string_view text, const CsvOptions& options = {});

/// Converts a RawTable to numbers. Columns listed in drop_columns plus any
/// date/time columns are removed; cells equal to missing_sentinel (after
/// decimal-mark normalization) are flagged missing. A drop_columns entry
/// naming an absent column produces a warning string, not an error.
///
/// Throws ParseError for any retained cell that does not parse as a finite
/// number, naming row, column and token.
Dataset to_dataset(const RawTable& table, double missing_sentinel,
                   std::span<const std::string> drop_columns,
                   std::vector<std::string>* warnings = nullptr);

/// Splits a dataset into features and the named target. The target column
/// and every other ground-truth analyzer column (any name ending in "(GT)")
/// are excluded from the features so the model never sees sibling targets.
///
/// Throws ValueError for an unknown target, listing the available columns.
SelectedXY select_xy(const Dataset& ds, std::string_view target_column);

/// True for reference-analyzer columns, i.e. names ending in "(GT)".
bool is_ground_truth_column(std::string_view name);

}  // namespace edgeboost
