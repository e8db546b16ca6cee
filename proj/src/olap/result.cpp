#include "kgcube/olap/result.hpp"

#include "kgcube/error.hpp"
#include "kgcube/mapping/csv.hpp"
#include "kgcube/mapping/expression.hpp"

namespace kgcube::olap {

using nlohmann::json;

std::string cell_text(const Cell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    if (const auto* d = std::get_if<double>(&c)) return mapping::format_number(*d);
    return {};
}

std::optional<std::size_t> ResultTable::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == name) return i;
    }
    return std::nullopt;
}

const Cell& ResultTable::at(std::size_t row, std::string_view column) const {
    auto i = column_index(column);
    if (!i) throw QueryError("no result column " + std::string(column));
    return rows.at(row).at(*i);
}

json ResultTable::to_json() const {
    json cols = json::array();
    for (const auto& c : columns) cols.push_back({{"name", c.name}, {"kind", c.kind == ColumnKind::Key ? "key" : "aggregate"}});
    json body = json::array();
    for (const auto& r : rows) {
        json row = json::array();
        for (const auto& c : r) {
            if (const auto* s = std::get_if<std::string>(&c)) {
                row.push_back(*s);
            } else if (const auto* d = std::get_if<double>(&c)) {
                row.push_back(*d);
            } else {
                row.push_back(nullptr);
            }
        }
        body.push_back(std::move(row));
    }
    return {{"columns", cols}, {"rows", body}, {"excluded", excluded}, {"diagnostics", diagnostics}};
}

std::string ResultTable::to_csv() const {
    std::vector<std::string> header;
    for (const auto& c : columns) header.push_back(c.name);
    std::vector<std::vector<std::string>> text;
    for (const auto& r : rows) {
        std::vector<std::string> line;
        for (const auto& c : r) line.push_back(cell_text(c));
        text.push_back(std::move(line));
    }
    return mapping::write_csv(header, text);
}

ResultTable result_from_json(const json& doc) {
    ResultTable t;
    try {
        for (const auto& c : doc.at("columns")) {
            t.columns.push_back({c.at("name").get<std::string>(),
                                 c.at("kind").get<std::string>() == "aggregate" ? ColumnKind::Aggregate : ColumnKind::Key});
        }
        for (const auto& r : doc.at("rows")) {
            if (r.size() != t.columns.size()) throw QueryError("result row arity does not match its columns");
            std::vector<Cell> row;
            for (const auto& c : r) {
                if (c.is_string()) {
                    row.emplace_back(c.get<std::string>());
                } else if (c.is_number()) {
                    row.emplace_back(c.get<double>());
                } else {
                    row.emplace_back(std::monostate{});
                }
            }
            t.rows.push_back(std::move(row));
        }
        t.excluded = doc.value("excluded", std::size_t{0});
        t.diagnostics = doc.value("diagnostics", std::vector<std::string>{});
    } catch (const json::exception& e) {
        throw QueryError(std::string("malformed result table: ") + e.what());
    }
    return t;
}

}  // namespace kgcube::olap
