#include "bmcap/table.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace bmcap {

std::string format_numeric(double value) {
    if (value == 0.0) return "0"; // also normalizes -0
    char buf[48];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::string format_cell(const Cell& cell) {
    if (const long* i = std::get_if<long>(&cell)) return std::to_string(*i);
    if (const double* d = std::get_if<double>(&cell)) return format_numeric(*d);
    return std::get<std::string>(cell);
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::invalid_argument("to_csv: row width does not match header");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_cell(row[i]);
        }
        out += '\n';
    }
    return out;
}

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out;
}

std::string json_cell(const Cell& cell) {
    if (std::holds_alternative<std::string>(cell)) {
        return "\"" + json_escape(std::get<std::string>(cell)) + "\"";
    }
    return format_cell(cell);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

Cell parse_cell(const std::string& field) {
    if (field.empty()) return field;
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin + field.size()) return v;
    return field;
}

} // namespace

std::string to_json(const Table& table) {
    std::string out = "[";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() != table.columns.size()) {
            throw std::invalid_argument("to_json: row width does not match header");
        }
        out += r ? ",\n " : "\n ";
        out += '{';
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += "\"" + json_escape(table.columns[i]) + "\":" + json_cell(row[i]);
        }
        out += '}';
    }
    out += "\n]\n";
    return out;
}

Table parse_csv(const std::string& text) {
    Table table;
    std::size_t start = 0;
    bool have_header = false;
    while (start < text.size()) {
        std::size_t pos = text.find('\n', start);
        if (pos == std::string::npos) pos = text.size();
        const std::string line = text.substr(start, pos - start);
        start = pos + 1;
        if (line.empty()) continue;
        if (!have_header) {
            table.columns = split_line(line);
            have_header = true;
            continue;
        }
        const std::vector<std::string> fields = split_line(line);
        if (fields.size() != table.columns.size()) {
            throw std::invalid_argument("parse_csv: ragged row ('" + line + "')");
        }
        std::vector<Cell> row;
        row.reserve(fields.size());
        for (const std::string& f : fields) row.push_back(parse_cell(f));
        table.rows.push_back(std::move(row));
    }
    if (!have_header) throw std::invalid_argument("parse_csv: missing header row");
    return table;
}

Table select_columns(const Table& table, const std::vector<std::string>& names) {
    std::vector<std::size_t> idx;
    idx.reserve(names.size());
    for (const std::string& name : names) {
        const auto it = std::find(table.columns.begin(), table.columns.end(), name);
        if (it == table.columns.end()) {
            throw std::invalid_argument("select_columns: unknown column '" + name + "'");
        }
        idx.push_back(static_cast<std::size_t>(it - table.columns.begin()));
    }
    Table out;
    out.columns = names;
    out.rows.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        std::vector<Cell> selected;
        selected.reserve(idx.size());
        for (std::size_t i : idx) selected.push_back(row[i]);
        out.rows.push_back(std::move(selected));
    }
    return out;
}

} // namespace bmcap
