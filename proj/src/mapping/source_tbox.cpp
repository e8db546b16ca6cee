#include "kgcube/mapping/source_tbox.hpp"

#include <set>

#include "kgcube/mapping/expression.hpp"
#include "kgcube/rdf/vocab.hpp"
#include "kgcube/schema/tbox.hpp"

namespace kgcube::mapping {

namespace {

bool is_integer(std::string_view s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

}  // namespace

std::string_view to_string(ColumnType t) {
    switch (t) {
        case ColumnType::Integer: return "integer";
        case ColumnType::Decimal: return "decimal";
        case ColumnType::Text: return "text";
    }
    return "text";
}

std::vector<std::string> SourceTable::column_names() const {
    std::vector<std::string> out;
    for (const auto& c : columns) out.push_back(c.name);
    return out;
}

SourceTable describe_table(std::string name, const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rows) {
    SourceTable t;
    t.name = std::move(name);
    for (std::size_t c = 0; c < header.size(); ++c) {
        bool any = false, all_int = true, all_num = true;
        for (const auto& r : rows) {
            const std::string& cell = r.at(c);
            if (cell.empty()) continue;
            any = true;
            double d;
            if (!is_integer(cell)) all_int = false;
            if (!parse_number(cell, d)) all_num = false;
        }
        ColumnType type = ColumnType::Text;
        if (any && all_int) {
            type = ColumnType::Integer;
        } else if (any && all_num) {
            type = ColumnType::Decimal;
        }
        t.columns.push_back({header[c], type});
    }
    return t;
}

TabularDataset make_dataset(std::string name, CsvTable csv) {
    TabularDataset d;
    d.table = describe_table(std::move(name), csv.header, csv.rows);
    d.rows = std::move(csv.rows);
    return d;
}

const SourceProperty* SourceTBox::by_iri(std::string_view iri) const {
    for (const auto& p : properties) {
        if (p.iri == iri) return &p;
    }
    return nullptr;
}

const SourceProperty* SourceTBox::by_column(std::string_view column) const {
    for (const auto& p : properties) {
        if (p.column == column) return &p;
    }
    return nullptr;
}

SourceTBox infer_source_tbox(const SourceTable& table, std::string_view ns) {
    if (table.name.empty()) throw MappingError("source table needs a name");
    SourceTBox tbox;
    tbox.class_iri = std::string(ns) + table.name;
    std::set<std::string> seen;
    for (const auto& c : table.columns) {
        if (c.name.empty()) throw MappingError("table " + table.name + " has an empty column name");
        if (!seen.insert(c.name).second) throw MappingError("table " + table.name + " has duplicate column " + c.name);
        std::string_view range = vocab::xsd::string;
        if (c.type == ColumnType::Integer) range = vocab::xsd::integer;
        if (c.type == ColumnType::Decimal) range = vocab::xsd::decimal;
        tbox.properties.push_back({std::string(ns) + c.name, c.name, std::string(range)});
    }
    return tbox;
}

rdf::Graph source_tbox_graph(const std::vector<SourceTBox>& tboxes, std::string_view ns) {
    rdf::Graph g;
    g.prefixes() = schema::standard_prefixes();
    g.prefixes()["onto"] = std::string(ns);
    const auto type = rdf::iri(vocab::rdf::type);
    for (const auto& t : tboxes) {
        g.insert(rdf::iri(t.class_iri), type, rdf::iri(vocab::owl::klass));
        for (const auto& p : t.properties) {
            g.insert(rdf::iri(p.iri), type, rdf::iri(vocab::owl::datatype_property));
            g.insert(rdf::iri(p.iri), rdf::iri(vocab::rdfs::domain), rdf::iri(t.class_iri));
            g.insert(rdf::iri(p.iri), rdf::iri(vocab::rdfs::range), rdf::iri(p.range));
        }
    }
    return g;
}

}  // namespace kgcube::mapping
