#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgcube/schema/cube_schema.hpp"

namespace kgcube::olap {

using schema::AggregateFunction;

// Regex is a case-insensitive substring match.
enum class Comparator { Regex, Eq, Ne, Lt, Le, Gt, Ge };

std::string_view to_string(Comparator c);
Comparator parse_comparator(std::string_view text);
bool is_ordering(Comparator c);

// Boolean filter tree. Attribute leaves test a level attribute reached from
// the cuboid's base level; measure leaves test an observation's measure value.
// An empty And is true, an empty Or is false.
struct Filter {
    enum class Kind { Attribute, Measure, And, Or };

    Kind kind = Kind::And;
    std::string level;
    std::string attribute;
    std::string measure;
    Comparator op = Comparator::Eq;
    std::string value;
    std::vector<Filter> children;

    static Filter attribute_test(std::string level, std::string attribute, Comparator op, std::string value);
    static Filter measure_test(std::string measure, Comparator op, std::string value);
    static Filter all(std::vector<Filter> children = {});
    static Filter any(std::vector<Filter> children = {});

    bool is_true() const { return kind == Kind::And && children.empty(); }
    bool operator==(const Filter&) const = default;
};

struct GroupBy {
    std::string dimension;
    std::string level;
    std::string attribute;  // display attribute of `level`

    bool operator==(const GroupBy&) const = default;
};

struct Aggregate {
    std::string measure;
    AggregateFunction function = AggregateFunction::Sum;

    bool operator==(const Aggregate&) const = default;
};

struct OlapQuery {
    std::string dataset;
    std::vector<GroupBy> group_by;
    std::vector<Aggregate> aggregates;
    std::optional<Filter> filter;
    std::vector<std::string> order_by;  // output column names; defaults to the key columns

    const GroupBy* group_for(std::string_view dimension) const;
    bool operator==(const OlapQuery&) const = default;
};

// Output column naming shared by execution and SPARQL emission.
std::string key_column(std::string_view dimension, std::string_view attribute);
std::string aggregate_column(const Aggregate& a);
std::vector<std::string> output_columns(const OlapQuery& q);

// The cuboid dimension whose base level rolls up to `level`, if exactly one does.
std::optional<std::string> dimension_for_level(const schema::CubeSchema& schema, const schema::CuboidStructure& cuboid,
                                               std::string_view level);

// Every broken invariant of `q` against `schema`; empty when the query is valid.
std::vector<std::string> validate_query(const OlapQuery& q, const schema::CubeSchema& schema);
// Throws QueryError carrying validate_query's list.
void check_query(const OlapQuery& q, const schema::CubeSchema& schema);

}  // namespace kgcube::olap
