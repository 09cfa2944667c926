// table.hpp — Flat result tables and their CSV/JSON encodings.
//
// Cells are rendered with 12 significant digits through a locale-independent
// formatter; identical tables always serialize to identical bytes. CSV and
// JSON render numbers through the same formatter, so the two encodings parse
// back to bit-identical values.

#pragma once

#include <string>
#include <variant>
#include <vector>

namespace bmcap {

using Cell = std::variant<long, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// 12-significant-digit shortest rendering ("%.12g" semantics, no locale).
std::string format_numeric(double value);

std::string format_cell(const Cell& cell);

/// Header row + data rows, comma-separated, "\n" line endings, no trailing
/// separator. Cells are written raw: column names and string cells must not
/// contain commas, quotes or newlines (ours never do).
std::string to_csv(const Table& table);

/// Array of one object per row, keys in column order.
std::string to_json(const Table& table);

/// Inverse of to_csv: cells that parse fully as numbers become doubles,
/// everything else stays a string. Throws std::invalid_argument on ragged
/// rows or missing header.
Table parse_csv(const std::string& text);

/// Projection of a subset of columns, in the requested order. Throws
/// std::invalid_argument for an unknown column name.
Table select_columns(const Table& table, const std::vector<std::string>& names);

} // namespace bmcap
