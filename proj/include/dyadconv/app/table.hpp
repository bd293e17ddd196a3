#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dyadconv/error.hpp"
#include "dyadconv/format.hpp"

namespace dyadconv::app {

/// Empty cell, integer, real, boolean or text.
using Cell = std::variant<std::monostate, long long, double, bool, std::string>;

enum class Format { csv, json };

inline std::string extension(Format f) { return f == Format::csv ? ".csv" : ".json"; }

inline std::string to_text(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, c);
}

inline std::optional<double> to_number(const Cell& c) {
    if (const auto* i = std::get_if<long long>(&c)) return static_cast<double>(*i);
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* b = std::get_if<bool>(&c)) return *b ? 1.0 : 0.0;
    if (const auto* s = std::get_if<std::string>(&c)) {
        if (*s == "true") return 1.0;
        if (*s == "false") return 0.0;
        if (*s == "nan") return std::nullopt;
        return parse_double(*s);
    }
    return std::nullopt;
}

/// Column-named table of cells. Row order is significant and preserved.
class Table {
public:
    Table() = default;
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    [[nodiscard]] const std::vector<std::string>& columns() const { return columns_; }
    [[nodiscard]] const std::vector<std::vector<Cell>>& rows() const { return rows_; }
    [[nodiscard]] std::size_t size() const { return rows_.size(); }
    [[nodiscard]] bool empty() const { return rows_.empty(); }

    void add_row(std::vector<Cell> row) {
        if (row.size() != columns_.size()) {
            throw std::invalid_argument("table: row has " + std::to_string(row.size()) + " cells, expected " +
                                        std::to_string(columns_.size()));
        }
        rows_.push_back(std::move(row));
    }

    void append(const Table& other) {
        if (other.columns_ != columns_) throw std::invalid_argument("table: column mismatch on append");
        rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
    }

    [[nodiscard]] std::optional<std::size_t> find_column(std::string_view name) const {
        for (std::size_t j = 0; j < columns_.size(); ++j) {
            if (columns_[j] == name) return j;
        }
        return std::nullopt;
    }

    [[nodiscard]] std::size_t column(std::string_view name) const {
        if (auto j = find_column(name)) return *j;
        throw SchemaError("table has no column '" + std::string(name) + "'");
    }

    [[nodiscard]] const Cell& at(std::size_t row, std::string_view name) const { return rows_.at(row).at(column(name)); }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

namespace detail {

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

}  // namespace detail

inline std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t j = 0; j < t.columns().size(); ++j) {
        if (j) out += ',';
        out += detail::csv_quote(t.columns()[j]);
    }
    out += '\n';
    for (const auto& row : t.rows()) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ',';
            out += detail::csv_quote(to_text(row[j]));
        }
        out += '\n';
    }
    return out;
}

/// Array of objects; keys in column order, non-finite reals as strings.
inline std::string to_json(const Table& t) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& row : t.rows()) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t j = 0; j < row.size(); ++j) {
            const auto& c = row[j];
            auto& slot = obj[t.columns()[j]];
            if (std::holds_alternative<std::monostate>(c)) {
                slot = nullptr;
            } else if (const auto* i = std::get_if<long long>(&c)) {
                slot = *i;
            } else if (const auto* d = std::get_if<double>(&c)) {
                if (std::isfinite(*d)) {
                    slot = *d;
                } else {
                    slot = format_double(*d);
                }
            } else if (const auto* b = std::get_if<bool>(&c)) {
                slot = *b;
            } else {
                slot = std::get<std::string>(c);
            }
        }
        doc.push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

inline std::string serialize(const Table& t, Format f) { return f == Format::csv ? to_csv(t) : to_json(t); }

/// RFC 4180 style: quoted fields may contain commas, quotes and newlines. All cells come back as text.
inline Table parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool quoted = false, field_started = false;
    std::size_t line = 1;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
            continue;
        }
        if (c == '"' && !field_started) {
            quoted = field_started = true;
        } else if (c == ',') {
            record.push_back(std::move(field));
            field.clear();
            field_started = false;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            record.push_back(std::move(field));
            field.clear();
            field_started = false;
            records.push_back(std::move(record));
            record.clear();
            ++line;
        } else {
            field += c;
            field_started = true;
        }
    }
    if (quoted) throw SchemaError("csv: unterminated quoted field at line " + std::to_string(line));
    if (field_started || !record.empty()) {
        record.push_back(std::move(field));
        records.push_back(std::move(record));
    }
    if (records.empty()) throw SchemaError("csv: missing header");
    Table t(records.front());
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() == 1 && records[r][0].empty()) continue;
        if (records[r].size() != t.columns().size()) {
            throw SchemaError("csv: record " + std::to_string(r + 1) + " has " + std::to_string(records[r].size()) +
                              " fields, expected " + std::to_string(t.columns().size()));
        }
        std::vector<Cell> row;
        for (auto& f : records[r]) {
            if (f.empty()) {
                row.emplace_back(std::monostate{});
            } else {
                row.emplace_back(std::move(f));
            }
        }
        t.add_row(std::move(row));
    }
    return t;
}

/// Array of flat objects; the first object fixes the column order.
inline Table parse_json_table(std::string_view text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("json: ") + e.what());
    }
    if (!doc.is_array()) throw SchemaError("json: table must be an array of objects");
    std::vector<std::string> columns;
    if (!doc.empty()) {
        if (!doc.front().is_object()) throw SchemaError("json: record 1 is not an object");
        for (const auto& [k, v] : doc.front().items()) columns.push_back(k);
    }
    Table t(columns);
    for (std::size_t r = 0; r < doc.size(); ++r) {
        const auto& obj = doc[r];
        if (!obj.is_object()) throw SchemaError("json: record " + std::to_string(r + 1) + " is not an object");
        std::vector<Cell> row;
        for (const auto& c : columns) {
            const auto it = obj.find(c);
            if (it == obj.end() || it->is_null()) {
                row.emplace_back(std::monostate{});
            } else if (it->is_boolean()) {
                row.emplace_back(it->get<bool>());
            } else if (it->is_number_integer()) {
                row.emplace_back(it->get<long long>());
            } else if (it->is_number()) {
                row.emplace_back(it->get<double>());
            } else if (it->is_string()) {
                row.emplace_back(it->get<std::string>());
            } else {
                throw SchemaError("json: record " + std::to_string(r + 1) + ", field '" + c + "': not a scalar");
            }
        }
        t.add_row(std::move(row));
    }
    return t;
}

/// Detects JSON by a leading '['.
inline Table parse_table(std::string_view text) {
    const auto p = text.find_first_not_of(" \t\r\n");
    if (p != std::string_view::npos && text[p] == '[') return parse_json_table(text);
    return parse_csv(text);
}

}  // namespace dyadconv::app
