#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgcube/error.hpp"

namespace kgcube::schema {

enum class AttributeKind { Datatype, Object };
enum class Cardinality { OneToMany, OneToOne, ManyToMany };
enum class AggregateFunction { Sum, Avg, Min, Max, Count };

std::string_view to_string(AggregateFunction f);
AggregateFunction parse_aggregate(std::string_view name);  // case-insensitive SUM/AVG/MIN/MAX/COUNT
std::string_view aggregate_iri(AggregateFunction f);
std::optional<AggregateFunction> aggregate_from_iri(std::string_view iri);

std::string_view to_string(Cardinality c);
Cardinality parse_cardinality(std::string_view name);
std::string_view cardinality_iri(Cardinality c);
std::optional<Cardinality> cardinality_from_iri(std::string_view iri);

bool is_numeric_datatype(std::string_view datatype_iri);

struct LevelAttribute {
    std::string iri;
    AttributeKind kind = AttributeKind::Datatype;
    // datatype IRI for datatype-valued attributes, level IRI for roll-up attributes
    std::string range;

    bool operator==(const LevelAttribute&) const = default;
};

struct Level {
    std::string iri;
    std::vector<LevelAttribute> attributes;  // sorted by IRI
    std::string identifier;

    const LevelAttribute* attribute(std::string_view attribute_iri) const;
    bool operator==(const Level&) const = default;
};

struct HierarchyStep {
    std::string child;
    std::string parent;
    std::string rollup;  // object-valued attribute of `child`
    Cardinality cardinality = Cardinality::OneToMany;

    bool operator==(const HierarchyStep&) const = default;
};

struct Hierarchy {
    std::string iri;
    std::string dimension;
    std::vector<std::string> levels;  // finest first, following the step chain
    std::vector<HierarchyStep> steps;  // chain order

    bool contains(std::string_view level) const;
    bool operator==(const Hierarchy&) const = default;
};

struct Dimension {
    std::string iri;
    std::vector<std::string> hierarchies;  // sorted

    bool operator==(const Dimension&) const = default;
};

struct Measure {
    std::string iri;
    std::string datatype;
    AggregateFunction aggregate = AggregateFunction::Sum;

    bool operator==(const Measure&) const = default;
};

struct BaseLevel {
    std::string dimension;
    std::string level;

    bool operator==(const BaseLevel&) const = default;
};

struct CuboidStructure {
    std::string iri;
    std::vector<BaseLevel> levels;      // sorted by dimension
    std::vector<std::string> measures;  // sorted

    const BaseLevel* base_for(std::string_view dimension) const;
    bool has_measure(std::string_view measure) const;
    bool operator==(const CuboidStructure&) const = default;
};

struct CubeDataset {
    std::string iri;
    std::string structure;

    bool operator==(const CubeDataset&) const = default;
};

// The multidimensional TBox. Immutable once built; share by const reference.
struct CubeSchema {
    std::map<std::string, Dimension> dimensions;
    std::map<std::string, Hierarchy> hierarchies;
    std::map<std::string, Level> levels;
    std::map<std::string, Measure> measures;
    std::map<std::string, CuboidStructure> structures;
    std::map<std::string, CubeDataset> datasets;

    const Level* level(std::string_view iri) const;
    const Dimension* dimension(std::string_view iri) const;
    const Hierarchy* hierarchy(std::string_view iri) const;
    const Measure* measure(std::string_view iri) const;
    const CuboidStructure* structure(std::string_view iri) const;
    const CubeDataset* dataset(std::string_view iri) const;

    // Dimensions whose hierarchies contain `level`.
    std::vector<std::string> dimensions_of(std::string_view level) const;
    // Datasets typed with `structure`.
    std::vector<std::string> datasets_of(std::string_view structure) const;

    bool empty() const;
    bool operator==(const CubeSchema&) const = default;
};

// Sorts every order-insensitive list so structurally equal schemas compare equal.
void normalize(CubeSchema& schema);

struct Violation {
    std::string subject;  // IRI the violation is about
    std::string message;
};

using ValidationReport = std::vector<Violation>;

ValidationReport validate_tbox(const CubeSchema& schema);

class PathNotFoundError : public SchemaError {
public:
    PathNotFoundError(const std::string& from, const std::string& to)
        : SchemaError("no roll-up path from " + from + " to " + to, {from, to}) {}
};

class AmbiguousPathError : public SchemaError {
public:
    AmbiguousPathError(const std::string& from, const std::string& to, std::vector<std::string> hierarchies)
        : SchemaError("ambiguous roll-up path from " + from + " to " + to + "; choose a hierarchy",
                      std::move(hierarchies)) {}
};

// Step chain from `from` up to `to`. Chains found in several hierarchies are
// only ambiguous when they differ; pass `hierarchy` to pick one explicitly.
std::vector<HierarchyStep> rollup_path(const CubeSchema& schema, std::string_view from, std::string_view to,
                                       std::optional<std::string_view> hierarchy = std::nullopt);

// True when `to` is reachable from `from` (including from == to).
bool reachable(const CubeSchema& schema, std::string_view from, std::string_view to);

}  // namespace kgcube::schema
