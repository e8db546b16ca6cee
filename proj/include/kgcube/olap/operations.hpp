#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgcube/olap/query.hpp"
#include "kgcube/olap/result.hpp"
#include "kgcube/rdf/graph.hpp"

namespace kgcube::olap {

// Attribute shown for a level when the caller names none: the first
// datatype attribute whose local name ends in "Name", else the identifier.
std::string default_display_attribute(const schema::CubeSchema& schema, std::string_view level);

// Query rewrites. Each returns a new query and leaves `q` untouched.
OlapQuery roll_up(const OlapQuery& q, const schema::CubeSchema& schema, const std::string& dimension,
                  const std::string& to_level, std::optional<std::string> attribute = std::nullopt);
OlapQuery drill_down(const OlapQuery& q, const schema::CubeSchema& schema, const std::string& dimension,
                     const std::string& to_level, std::optional<std::string> attribute = std::nullopt);
OlapQuery slice(const OlapQuery& q, const schema::CubeSchema& schema, const std::string& dimension,
                const std::string& level, const std::string& attribute, const std::string& value);
OlapQuery dice(const OlapQuery& q, const schema::CubeSchema& schema, const Filter& predicate);

// Full outer join of the two results on the key columns of `shared_levels`.
// Shared columns come first; the remaining columns of each side are
// prefixed "A_" and "B_".
ResultTable drill_across(const OlapQuery& a, const OlapQuery& b, const std::vector<std::string>& shared_levels,
                         const schema::CubeSchema& schema, const rdf::Graph& graph);

}  // namespace kgcube::olap
