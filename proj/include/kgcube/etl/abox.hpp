#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kgcube/mapping/mapping_set.hpp"
#include "kgcube/rdf/graph.hpp"
#include "kgcube/schema/cube_schema.hpp"

namespace kgcube::etl {

inline constexpr std::string_view default_base_iri = "http://bike-csecu.com/datasets/agri/abox/";

// Percent-encodes every byte outside the IRI unreserved set.
std::string percent_encode(std::string_view text);

// Mints member IRIs as base + "{LevelLocal}/{key}" and observations as
// base + "observation/{key}".
class IriScheme {
public:
    explicit IriScheme(std::string base = std::string(default_base_iri));

    std::string member(std::string_view level_iri, std::string_view key) const;
    std::string observation(std::string_view key) const;
    const std::string& base() const { return base_; }

private:
    std::string base_;
};

// Per accepted row: type + memberOf triples plus one triple per non-empty
// mapped attribute; roll-up attributes point at the parent member IRI.
// Throws EtlError("ABox Generation", ...) on a duplicate key or a bad cell.
rdf::Graph generate_level_members(const schema::CubeSchema& schema, const mapping::ConceptMapping& mapping,
                                  const mapping::TabularDataset& data, const IriScheme& iris);

// Per accepted row: type, qb:dataSet, one reference per base level and one
// xsd:float literal per non-empty measure cell.
rdf::Graph generate_observations(const schema::CubeSchema& schema, const mapping::ConceptMapping& mapping,
                                 const mapping::TabularDataset& data, const schema::CubeDataset& dataset,
                                 const IriScheme& iris);

// Roll-up triples whose target is not a member of the declared parent level.
std::vector<std::string> dangling_rollups(const rdf::Graph& graph, const schema::CubeSchema& schema);

// Observation level references whose target is not a member of that level.
std::vector<std::string> dangling_level_refs(const rdf::Graph& graph, const schema::CubeSchema& schema);

}  // namespace kgcube::etl
