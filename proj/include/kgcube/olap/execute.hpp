#pragma once

#include "kgcube/olap/plan.hpp"
#include "kgcube/olap/result.hpp"
#include "kgcube/rdf/graph.hpp"

namespace kgcube::olap {

// Evaluates the plan's basic graph pattern over `graph`, then filters,
// groups by the key columns and aggregates. Read-only over `graph`.
ResultTable execute(const AlgebraPlan& plan, const rdf::Graph& graph);

// compile + execute.
ResultTable run_query(const OlapQuery& q, const schema::CubeSchema& schema, const rdf::Graph& graph);

// Ordering used by Sort: numeric when both cells are numbers (or numeric key text), else text.
int compare_cells(const Cell& a, const Cell& b, bool numeric);

}  // namespace kgcube::olap
