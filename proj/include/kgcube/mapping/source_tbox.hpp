#pragma once

#include <string>
#include <vector>

#include "kgcube/mapping/csv.hpp"
#include "kgcube/rdf/graph.hpp"

namespace kgcube::mapping {

enum class ColumnType { Integer, Decimal, Text };

std::string_view to_string(ColumnType t);

struct SourceColumn {
    std::string name;
    ColumnType type = ColumnType::Text;
};

struct SourceTable {
    std::string name;
    std::vector<SourceColumn> columns;

    std::vector<std::string> column_names() const;
};

// Cleansed rows of one source table; every row has one cell per column.
struct TabularDataset {
    SourceTable table;
    std::vector<std::vector<std::string>> rows;
};

// Builds the table description with sniffed column types: integer when every
// non-empty cell is an integer, else decimal when every one is numeric, else
// text. A column with no non-empty cells is text.
SourceTable describe_table(std::string name, const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rows);
TabularDataset make_dataset(std::string name, CsvTable csv);

inline constexpr std::string_view default_source_ns = "http://bike-csecu.com/datasets/agri/onto#";

struct SourceProperty {
    std::string iri;
    std::string column;
    std::string range;  // xsd datatype IRI
};

struct SourceTBox {
    std::string class_iri;
    std::vector<SourceProperty> properties;  // column order

    const SourceProperty* by_iri(std::string_view iri) const;
    const SourceProperty* by_column(std::string_view column) const;
};

// Class IRI = ns + table name; one datatype property ns + column per column.
// Throws MappingError on an empty table name or duplicate/empty column names.
SourceTBox infer_source_tbox(const SourceTable& table, std::string_view ns = default_source_ns);

// OWL rendering: class, datatype properties with rdfs:domain and rdfs:range.
rdf::Graph source_tbox_graph(const std::vector<SourceTBox>& tboxes, std::string_view ns = default_source_ns);

}  // namespace kgcube::mapping
