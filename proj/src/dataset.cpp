#include "edgeboost/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <sstream>
#include <unordered_set>

#include "edgeboost/errors.hpp"

namespace edgeboost {

namespace {

std::vector<std::string> split_fields(std::string_view line, char delimiter) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(delimiter, start);
        if (pos == std::string_view::npos) {
            fields.emplace_back(line.substr(start));
            break;
        }
        fields.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

std::string_view trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool all_fields_empty(const std::vector<std::string>& fields) {
    return std::all_of(fields.begin(), fields.end(),
                       [](const std::string& f) { return trim(f).empty(); });
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool is_datetime_column(std::string_view name) {
    std::string l = lower(trim(name));
    return l == "date" || l == "time";
}

}  // namespace

bool is_ground_truth_column(std::string_view name) {
    std::string_view t = trim(name);
    return t.size() >= 4 && t.substr(t.size() - 4) == "(GT)";
}

int Dataset::column_index(std::string_view name) const {
    for (std::size_t c = 0; c < column_names.size(); ++c) {
        if (column_names[c] == name) return static_cast<int>(c);
    }
    return -1;
}

std::vector<std::size_t> Dataset::missing_counts() const {
    std::vector<std::size_t> counts(n_cols, 0);
    for (std::size_t r = 0; r < n_rows; ++r) {
        for (std::size_t c = 0; c < n_cols; ++c) {
            counts[c] += missing[r * n_cols + c];
        }
    }
    return counts;
}

RawTable parse_csv(std::istream& input, const CsvOptions& options) {
    std::ostringstream buffer;
    buffer << input.rdbuf();
    return parse_csv_text(buffer.str(), options);
}

RawTable parse_csv_text(std::string_view text, const CsvOptions& options) {
    if (options.delimiter == options.decimal_separator) {
        throw ValueError("delimiter and decimal separator must be distinct characters");
    }

    // Split into lines, tolerating CRLF endings and a missing final newline.
    std::vector<std::vector<std::string>> rows;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        if (pos == text.size()) {
            break;
        }
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            (nl == std::string_view::npos) ? text.substr(pos) : text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        rows.push_back(split_fields(line, options.delimiter));
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }

    // Trailing fully-empty rows (the source file ends in bare ";;;;" lines).
    while (!rows.empty() && all_fields_empty(rows.back())) rows.pop_back();

    if (rows.empty()) {
        throw ParseError("empty input: no header row found");
    }

    std::vector<std::string> header = std::move(rows.front());
    const std::size_t raw_field_count = header.size();

    // Drop trailing columns whose header is empty (unnamed trailers).
    std::size_t named_cols = header.size();
    while (named_cols > 0 && trim(header[named_cols - 1]).empty()) --named_cols;
    if (named_cols == 0) {
        throw ParseError("header row has no named columns");
    }

    RawTable table;
    table.options = options;
    table.column_names.reserve(named_cols);
    for (std::size_t c = 0; c < named_cols; ++c) {
        table.column_names.emplace_back(trim(header[c]));
    }

    std::unordered_set<std::string_view> seen;
    for (const std::string& name : table.column_names) {
        if (!seen.insert(name).second) {
            throw ParseError("duplicate column name: '" + name + "'");
        }
    }

    table.cells.reserve(rows.size() - 1);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        std::vector<std::string>& fields = rows[i];
        if (fields.size() != raw_field_count) {
            std::size_t line_no = i + 1;  // 1-based, header is line 1
            throw ParseError("row " + std::to_string(line_no) + ": expected " +
                                 std::to_string(raw_field_count) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        }
        fields.resize(named_cols);
        table.cells.push_back(std::move(fields));
    }

    return table;
}

namespace {

bool parse_number(std::string_view token, char decimal_separator, double& out) {
    std::string normalized(trim(token));
    if (normalized.empty()) return false;
    if (decimal_separator != '.') {
        for (char& c : normalized) {
            if (c == decimal_separator) c = '.';
        }
    }
    const char* begin = normalized.data();
    const char* end = begin + normalized.size();
    auto result = std::from_chars(begin, end, out);
    return result.ec == std::errc() && result.ptr == end && std::isfinite(out);
}

}  // namespace

Dataset to_dataset(const RawTable& table, double missing_sentinel,
                   std::span<const std::string> drop_columns,
                   std::vector<std::string>* warnings) {
    std::unordered_set<std::string> drop_set;
    for (const std::string& name : drop_columns) {
        bool present = std::find(table.column_names.begin(), table.column_names.end(), name) !=
                       table.column_names.end();
        if (!present && warnings != nullptr) {
            warnings->push_back("drop column '" + name + "' not present in input");
        }
        drop_set.insert(name);
    }

    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < table.column_names.size(); ++c) {
        const std::string& name = table.column_names[c];
        if (is_datetime_column(name) || drop_set.count(name) != 0) continue;
        keep.push_back(c);
    }

    Dataset ds;
    ds.n_rows = table.n_rows();
    ds.n_cols = keep.size();
    ds.column_names.reserve(keep.size());
    for (std::size_t c : keep) ds.column_names.push_back(table.column_names[c]);
    ds.values.assign(ds.n_rows * ds.n_cols, 0.0);
    ds.missing.assign(ds.n_rows * ds.n_cols, 0);

    for (std::size_t r = 0; r < ds.n_rows; ++r) {
        const std::vector<std::string>& row = table.cells[r];
        for (std::size_t j = 0; j < keep.size(); ++j) {
            const std::string& token = row[keep[j]];
            double value = 0.0;
            if (!parse_number(token, table.options.decimal_separator, value)) {
                throw ParseError("row " + std::to_string(r + 2) + ", column '" +
                                     ds.column_names[j] + "': cannot parse '" + token + "'",
                                 r + 2);
            }
            std::size_t idx = r * ds.n_cols + j;
            if (value == missing_sentinel) {
                ds.missing[idx] = 1;  // placeholder value stays 0.0
            } else {
                ds.values[idx] = value;
            }
        }
    }

    return ds;
}

SelectedXY select_xy(const Dataset& ds, std::string_view target_column) {
    int target_idx = ds.column_index(target_column);
    if (target_idx < 0) {
        std::string available;
        for (std::size_t c = 0; c < ds.column_names.size(); ++c) {
            if (c > 0) available += ", ";
            available += ds.column_names[c];
        }
        throw ValueError("unknown target column '" + std::string(target_column) +
                         "'; available columns: " + available);
    }

    SelectedXY out;
    out.target.name = ds.column_names[static_cast<std::size_t>(target_idx)];
    out.target.values.resize(ds.n_rows);
    out.target.missing.resize(ds.n_rows);
    for (std::size_t r = 0; r < ds.n_rows; ++r) {
        out.target.values[r] = ds.value_at(r, static_cast<std::size_t>(target_idx));
        out.target.missing[r] = ds.missing[r * ds.n_cols + static_cast<std::size_t>(target_idx)];
    }

    std::vector<std::size_t> keep;
    for (std::size_t c = 0; c < ds.n_cols; ++c) {
        if (static_cast<int>(c) == target_idx) continue;
        if (is_ground_truth_column(ds.column_names[c])) continue;
        keep.push_back(c);
    }

    Dataset& f = out.features;
    f.n_rows = ds.n_rows;
    f.n_cols = keep.size();
    for (std::size_t c : keep) f.column_names.push_back(ds.column_names[c]);
    f.values.resize(f.n_rows * f.n_cols);
    f.missing.resize(f.n_rows * f.n_cols);
    for (std::size_t r = 0; r < ds.n_rows; ++r) {
        for (std::size_t j = 0; j < keep.size(); ++j) {
            f.values[r * f.n_cols + j] = ds.value_at(r, keep[j]);
            f.missing[r * f.n_cols + j] = ds.missing[r * ds.n_cols + keep[j]];
        }
    }

    return out;
}

}  // namespace edgeboost
