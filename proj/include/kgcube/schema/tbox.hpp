#pragma once

#include "kgcube/rdf/graph.hpp"
#include "kgcube/schema/cube_schema.hpp"

namespace kgcube::schema {

// Materializes the QB/QB4OLAP assertions of `graph` into a schema. Unknown
// vocabulary is ignored. Throws SchemaError listing every dangling IRI.
CubeSchema load_tbox(const rdf::Graph& graph);

// Inverse of load_tbox. Refuses (SchemaError carrying the violations) when
// validate_tbox reports anything. `prefixes` is copied into the graph.
rdf::Graph serialize_tbox(const CubeSchema& schema, const rdf::PrefixMap& prefixes = {});

// The prefix block every generated graph carries (rdf, rdfs, owl, xsd, qb, qb4o, skos, kgc).
rdf::PrefixMap standard_prefixes();

}  // namespace kgcube::schema
