#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace kgcube::olap {

enum class ColumnKind { Key, Aggregate };

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::Key;
    bool operator==(const Column&) const = default;
};

// Null, text, or number.
using Cell = std::variant<std::monostate, std::string, double>;

std::string cell_text(const Cell& c);  // empty for null; integral numbers print without a fraction

struct ResultTable {
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> rows;
    std::size_t excluded = 0;             // solutions dropped for unparseable measure literals
    std::vector<std::string> diagnostics;

    std::optional<std::size_t> column_index(std::string_view name) const;
    const Cell& at(std::size_t row, std::string_view column) const;

    nlohmann::json to_json() const;
    std::string to_csv() const;
};

ResultTable result_from_json(const nlohmann::json& doc);

}  // namespace kgcube::olap
