#pragma once

#include "kgcube/rdf/graph.hpp"

namespace kgcube::rdf {

// True when a bijection between the blank nodes of `a` and `b` maps the
// triples of one exactly onto the other. Ground triples must match as sets.
bool isomorphic(const Graph& a, const Graph& b);

}  // namespace kgcube::rdf
