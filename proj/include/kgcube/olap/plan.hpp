#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kgcube/olap/query.hpp"

namespace kgcube::olap {

// A pattern slot: a variable name (without '?') or an IRI.
struct Slot {
    bool is_var = true;
    std::string text;

    static Slot var(std::string name) { return {true, std::move(name)}; }
    static Slot iri(std::string iri) { return {false, std::move(iri)}; }
    bool operator==(const Slot&) const = default;
};

struct PlanPattern {
    Slot subject;
    Slot predicate;
    Slot object;
    bool operator==(const PlanPattern&) const = default;
};

enum class StageKind { ObservationScan, MemberJoin, AttributeFetch, FilterApply, GroupAggregate, Sort };

std::string_view to_string(StageKind k);

struct Stage {
    StageKind kind;
    std::string label;
    std::vector<std::string> consumes;
    std::vector<std::string> produces;
    std::vector<PlanPattern> patterns;  // empty for FilterApply/GroupAggregate/Sort
};

struct Hop {
    std::string child_var;
    std::string rollup;
    std::string parent_var;
    std::string parent_level;
};

struct DimensionChain {
    std::string dimension;
    std::string base_level;
    std::string base_var;
    std::vector<Hop> hops;
};

struct KeyBinding {
    std::string column;  // variable name == output column
    std::string dimension;
    std::string level;
    std::string attribute;
    bool numeric = false;
};

struct MeasureBinding {
    std::string measure;
    std::string var;
};

struct AggregateBinding {
    std::string column;
    std::string measure;
    std::string var;
    AggregateFunction function;
};

// Filter tree with every leaf resolved to the variable it tests.
struct BoundFilter {
    Filter::Kind kind = Filter::Kind::And;
    std::string var;
    Comparator op = Comparator::Eq;
    std::string value;
    bool numeric = false;
    std::vector<BoundFilter> children;
};

struct AlgebraPlan {
    std::string dataset;
    std::string structure;
    std::vector<MeasureBinding> measures;
    std::vector<DimensionChain> chains;
    std::vector<KeyBinding> keys;
    std::vector<AggregateBinding> aggregates;
    std::optional<BoundFilter> filter;
    std::vector<std::string> order_by;  // user order followed by the remaining keys
    std::vector<Stage> stages;

    // Basic graph pattern in emission order (observation scan first).
    std::vector<PlanPattern> patterns() const;
    // Member variable bound for `level`, if the plan joins it.
    std::optional<std::string> member_var(std::string_view level) const;
};

struct CompileOptions {
    // Extra levels whose members must be joined (federated join levels).
    std::vector<std::string> extra_levels;
};

// Validates `q` (QueryError on failure) and lowers it to the staged plan.
AlgebraPlan compile(const OlapQuery& q, const schema::CubeSchema& schema, const CompileOptions& options = {});

}  // namespace kgcube::olap
