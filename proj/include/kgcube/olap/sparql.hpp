#pragma once

#include <string>

#include "kgcube/olap/plan.hpp"
#include "kgcube/rdf/graph.hpp"

namespace kgcube::olap {

// SPARQL 1.1 SELECT text for the plan. Byte-deterministic for a given plan.
std::string emit_sparql(const AlgebraPlan& plan);

// Plain (non-regex) text escaped so that REGEX treats it literally.
std::string escape_regex(std::string_view text);

struct FederatedSpec {
    std::string endpoint;    // SERVICE IRI
    std::string join_level;  // level whose members carry owl:sameAs links
    std::string pattern;     // group graph pattern evaluated remotely; ?entity is the linked resource
};

// Variable the join level's sameAs target is bound to.
inline constexpr const char* entity_var = "entity";

// Variables of `pattern` in first-occurrence order, without '?'.
std::vector<std::string> pattern_variables(std::string_view pattern);

// The local query plus `?member owl:sameAs ?entity . SERVICE <endpoint> { pattern }`.
// Variables the pattern introduces are projected and grouped on. When `graph`
// is given and no member of the join level has a sameAs link, the text starts
// with a "# WARNING" comment line. QueryError on an empty pattern or endpoint.
std::string emit_federated_sparql(const OlapQuery& q, const schema::CubeSchema& schema, const FederatedSpec& spec,
                                  const rdf::Graph* graph = nullptr);

// Whether any member of `level` carries an owl:sameAs link in `graph`.
bool level_has_links(const rdf::Graph& graph, std::string_view level);

}  // namespace kgcube::olap
