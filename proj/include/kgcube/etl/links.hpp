#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kgcube/rdf/graph.hpp"

namespace kgcube::etl {

struct Link {
    std::string local;
    std::string external;
};

struct LinkSet {
    std::vector<Link> entries;
};

// Two-column CSV (localIri, externalIri) with a header row.
LinkSet parse_links(std::string_view csv_text);
LinkSet read_links(const std::filesystem::path& path);

// Adds one owl:sameAs triple per entry and returns how many were new. In
// strict mode every local IRI must already be a subject of `graph`.
std::size_t apply_links(rdf::Graph& graph, const LinkSet& links, bool strict = true);

}  // namespace kgcube::etl
