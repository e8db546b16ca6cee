#include "kgcube/olap/query.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "kgcube/mapping/expression.hpp"
#include "kgcube/rdf/term.hpp"

namespace kgcube::olap {

std::string_view to_string(Comparator c) {
    switch (c) {
        case Comparator::Regex: return "regex";
        case Comparator::Eq: return "=";
        case Comparator::Ne: return "!=";
        case Comparator::Lt: return "<";
        case Comparator::Le: return "<=";
        case Comparator::Gt: return ">";
        case Comparator::Ge: return ">=";
    }
    return "=";
}

Comparator parse_comparator(std::string_view text) {
    std::string t(text);
    std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (t == "regex") return Comparator::Regex;
    if (t == "=" || t == "==" || t == "eq") return Comparator::Eq;
    if (t == "!=" || t == "ne") return Comparator::Ne;
    if (t == "<" || t == "lt") return Comparator::Lt;
    if (t == "<=" || t == "le") return Comparator::Le;
    if (t == ">" || t == "gt") return Comparator::Gt;
    if (t == ">=" || t == "ge") return Comparator::Ge;
    throw QueryError("unknown comparator '" + std::string(text) + "'");
}

bool is_ordering(Comparator c) {
    return c == Comparator::Lt || c == Comparator::Le || c == Comparator::Gt || c == Comparator::Ge;
}

Filter Filter::attribute_test(std::string level, std::string attribute, Comparator op, std::string value) {
    Filter f;
    f.kind = Kind::Attribute;
    f.level = std::move(level);
    f.attribute = std::move(attribute);
    f.op = op;
    f.value = std::move(value);
    return f;
}

Filter Filter::measure_test(std::string measure, Comparator op, std::string value) {
    Filter f;
    f.kind = Kind::Measure;
    f.measure = std::move(measure);
    f.op = op;
    f.value = std::move(value);
    return f;
}

Filter Filter::all(std::vector<Filter> children) {
    Filter f;
    f.kind = Kind::And;
    f.children = std::move(children);
    return f;
}

Filter Filter::any(std::vector<Filter> children) {
    Filter f;
    f.kind = Kind::Or;
    f.children = std::move(children);
    return f;
}

const GroupBy* OlapQuery::group_for(std::string_view dimension) const {
    for (const auto& g : group_by) {
        if (g.dimension == dimension) return &g;
    }
    return nullptr;
}

std::string key_column(std::string_view dimension, std::string_view attribute) {
    return rdf::local_name(dimension) + "_" + rdf::local_name(attribute);
}

std::string aggregate_column(const Aggregate& a) {
    std::string fn(schema::to_string(a.function));
    std::transform(fn.begin(), fn.end(), fn.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return rdf::local_name(a.measure) + "_" + fn;
}

std::vector<std::string> output_columns(const OlapQuery& q) {
    std::vector<std::string> out;
    for (const auto& g : q.group_by) out.push_back(key_column(g.dimension, g.attribute));
    for (const auto& a : q.aggregates) out.push_back(aggregate_column(a));
    return out;
}

std::optional<std::string> dimension_for_level(const schema::CubeSchema& schema, const schema::CuboidStructure& cuboid,
                                               std::string_view level) {
    std::optional<std::string> found;
    for (const auto& b : cuboid.levels) {
        if (!schema::reachable(schema, b.level, level)) continue;
        if (found) return std::nullopt;
        found = b.dimension;
    }
    return found;
}

namespace {

bool numeric_attribute(const schema::LevelAttribute& a) {
    return a.kind == schema::AttributeKind::Datatype && schema::is_numeric_datatype(a.range);
}

void check_path(const schema::CubeSchema& schema, const std::string& from, const std::string& to, const std::string& what,
                std::vector<std::string>& out) {
    try {
        schema::rollup_path(schema, from, to);
    } catch (const SchemaError& e) {
        out.push_back(what + ": " + e.what());
    }
}

void check_filter(const Filter& f, const schema::CubeSchema& schema, const schema::CuboidStructure& st,
                  std::vector<std::string>& out) {
    switch (f.kind) {
        case Filter::Kind::And:
        case Filter::Kind::Or:
            for (const auto& c : f.children) check_filter(c, schema, st, out);
            return;
        case Filter::Kind::Measure: {
            if (!st.has_measure(f.measure)) out.push_back("filter: measure " + f.measure + " is not in cuboid " + st.iri);
            double d;
            if (f.op == Comparator::Regex) out.push_back("filter: regex is not allowed on measure " + f.measure);
            if (!mapping::parse_number(f.value, d)) out.push_back("filter: measure value '" + f.value + "' is not numeric");
            return;
        }
        case Filter::Kind::Attribute: {
            const auto* level = schema.level(f.level);
            if (!level) {
                out.push_back("filter: unknown level " + f.level);
                return;
            }
            const auto* attr = level->attribute(f.attribute);
            if (!attr) {
                out.push_back("filter: attribute " + f.attribute + " does not belong to level " + f.level);
                return;
            }
            auto dim = dimension_for_level(schema, st, f.level);
            if (!dim) {
                out.push_back("filter: level " + f.level + " is not reachable from exactly one base level of " + st.iri);
                return;
            }
            if (is_ordering(f.op)) {
                double d;
                if (!numeric_attribute(*attr)) {
                    out.push_back("filter: comparator " + std::string(to_string(f.op)) + " needs a numeric attribute, " +
                                  f.attribute + " is not numeric");
                } else if (!mapping::parse_number(f.value, d)) {
                    out.push_back("filter: value '" + f.value + "' is not numeric");
                }
            }
            return;
        }
    }
}

}  // namespace

std::vector<std::string> validate_query(const OlapQuery& q, const schema::CubeSchema& schema) {
    std::vector<std::string> out;
    const auto* ds = schema.dataset(q.dataset);
    if (!ds) {
        out.push_back("unknown dataset " + q.dataset);
        return out;
    }
    const auto* st = schema.structure(ds->structure);
    if (!st) {
        out.push_back("dataset " + q.dataset + " has no cuboid structure");
        return out;
    }

    std::set<std::string> dims;
    for (const auto& g : q.group_by) {
        if (!dims.insert(g.dimension).second) out.push_back("dimension " + g.dimension + " appears twice in groupBy");
        const auto* base = st->base_for(g.dimension);
        if (!base) {
            out.push_back("dimension " + g.dimension + " is not part of cuboid " + st->iri);
            continue;
        }
        const auto* level = schema.level(g.level);
        if (!level) {
            out.push_back("unknown level " + g.level);
            continue;
        }
        check_path(schema, base->level, g.level, "groupBy " + g.level, out);
        if (!level->attribute(g.attribute)) {
            out.push_back("attribute " + g.attribute + " does not belong to level " + g.level);
        }
    }

    if (q.aggregates.empty()) out.push_back("query needs at least one aggregate");
    std::set<std::string> aggs;
    for (const auto& a : q.aggregates) {
        if (!st->has_measure(a.measure)) out.push_back("measure " + a.measure + " is not in cuboid " + st->iri);
        if (!aggs.insert(aggregate_column(a)).second) out.push_back("aggregate " + aggregate_column(a) + " is requested twice");
    }

    if (q.filter) check_filter(*q.filter, schema, *st, out);

    auto cols = output_columns(q);
    for (const auto& o : q.order_by) {
        if (std::find(cols.begin(), cols.end(), o) == cols.end()) out.push_back("orderBy column " + o + " is not an output column");
    }
    return out;
}

void check_query(const OlapQuery& q, const schema::CubeSchema& schema) {
    auto v = validate_query(q, schema);
    if (v.empty()) return;
    std::string msg = "invalid query: " + v.front();
    if (v.size() > 1) msg += " (and " + std::to_string(v.size() - 1) + " more)";
    throw QueryError(msg, std::move(v));
}

}  // namespace kgcube::olap
