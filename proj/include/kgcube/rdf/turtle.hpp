#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "kgcube/rdf/graph.hpp"

namespace kgcube::rdf {

struct TurtleOptions {
    // Base IRI for resolving relative references before any @base.
    std::string base_iri;
};

// Parses a Turtle document into a fresh graph. Supports the whole grammar
// except collections and RDF-star. Blank node labels are replaced by
// fresh graph-scoped labels. Throws TurtleSyntaxError with line/column.
Graph parse_turtle(std::string_view text, const TurtleOptions& options = {});

// Parses into an existing graph (blank nodes get labels fresh in `into`).
void parse_turtle_into(Graph& into, std::string_view text, const TurtleOptions& options = {});

Graph load_turtle_file(const std::filesystem::path& path);

// Deterministic serialization: prefix block, then subjects in term order,
// predicates sorted within a subject. Prefixed names are used wherever the
// graph's prefix map allows.
std::string serialize_turtle(const Graph& graph);

void save_turtle_file(const Graph& graph, const std::filesystem::path& path);

}  // namespace kgcube::rdf
