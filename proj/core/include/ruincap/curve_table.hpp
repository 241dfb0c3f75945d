#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ruincap {

// Grid of premium rates with named value columns. Missing cells are
// std::nullopt and serialize as NA. Metadata lines carry the configuration
// echo, seed and per-point warnings.
struct CurveTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<double>>> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    // Index of a column, or throws std::out_of_range.
    std::size_t column(const std::string& name) const;

    void add_meta(std::string key, std::string value) { metadata.emplace_back(std::move(key), std::move(value)); }

    // Append the columns of `other` (minus its first column) to this table.
    // Both tables must have the same number of rows.
    void append_columns(const CurveTable& other);
};

// CSV with '#'-prefixed "key: value" metadata lines, a header row, 17
// significant digits, NA for missing values and LF line endings.
void write_csv(std::ostream& os, const CurveTable& table);
std::string to_csv(const CurveTable& table);

// Inverse of write_csv. Throws std::invalid_argument on malformed input.
CurveTable read_csv(std::istream& is);

// Shortest round-trip representation is not used; values always carry
// exactly 17 significant digits so files are bit-stable.
std::string format_double(double v);

}  // namespace ruincap
