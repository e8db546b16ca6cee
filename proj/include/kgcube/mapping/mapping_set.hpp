#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgcube/mapping/expression.hpp"
#include "kgcube/mapping/source_tbox.hpp"
#include "kgcube/rdf/graph.hpp"
#include "kgcube/rdf/vocab.hpp"
#include "kgcube/schema/cube_schema.hpp"

namespace kgcube::mapping {

enum class IriValueType { SourceAttribute, Expression };

struct PropertyMapping {
    std::string iri;
    std::string target_property;
    // Bare column reference for source-property mappings, parsed text otherwise.
    Expression source;
};

enum class TargetKind { Level, Structure };

struct ConceptMapping {
    std::string iri;
    std::string source_concept;
    std::string target_concept;
    TargetKind target_kind = TargetKind::Level;
    IriValueType iri_value_type = IriValueType::SourceAttribute;
    Expression iri_value;
    // nullopt means all source instances are mapped.
    std::optional<Expression> matched_instances;
    std::vector<PropertyMapping> properties;  // sorted by target property

    bool matches(const RowView& row) const { return !matched_instances || matched_instances->test(row); }
    const PropertyMapping* property(std::string_view target_property) const;
};

struct MappingSet {
    std::string iri;
    std::string source_tbox_location;
    std::string target_tbox_location;
    std::vector<ConceptMapping> concepts;  // sorted by IRI

    const ConceptMapping* for_source(std::string_view source_concept) const;
};

// Reads the single map:Dataset of `graph` with its concept and property
// mappings. Every source reference is resolved against `sources`, every
// target reference against `target`; any failure throws MappingError.
MappingSet parse_mappings(const rdf::Graph& graph, const std::vector<SourceTBox>& sources,
                          const schema::CubeSchema& target, std::string_view map_ns = vocab::map_ns);

}  // namespace kgcube::mapping
