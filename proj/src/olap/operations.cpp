#include "kgcube/olap/operations.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "kgcube/olap/execute.hpp"
#include "kgcube/rdf/term.hpp"

namespace kgcube::olap {

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

GroupBy& group_of(OlapQuery& q, const std::string& dimension, const char* op) {
    for (auto& g : q.group_by) {
        if (g.dimension == dimension) return g;
    }
    throw QueryError(std::string(op) + ": dimension " + dimension + " is not in groupBy");
}

const schema::BaseLevel& base_of(const OlapQuery& q, const schema::CubeSchema& schema, const std::string& dimension) {
    const auto* ds = schema.dataset(q.dataset);
    if (!ds) throw QueryError("unknown dataset " + q.dataset);
    const auto* st = schema.structure(ds->structure);
    const auto* base = st ? st->base_for(dimension) : nullptr;
    if (!base) throw QueryError("dimension " + dimension + " is not part of the cuboid of " + q.dataset);
    return *base;
}

void rename_order(OlapQuery& q, const std::string& from, const std::optional<std::string>& to) {
    auto it = std::find(q.order_by.begin(), q.order_by.end(), from);
    if (it == q.order_by.end()) return;
    if (to) {
        *it = *to;
    } else {
        q.order_by.erase(it);
    }
}

OlapQuery regroup(const OlapQuery& q, const schema::CubeSchema& schema, const std::string& dimension,
                  const std::string& to_level, std::optional<std::string> attribute) {
    OlapQuery out = q;
    auto& g = group_of(out, dimension, "regroup");
    std::string old_col = key_column(g.dimension, g.attribute);
    g.level = to_level;
    g.attribute = attribute ? *attribute : default_display_attribute(schema, to_level);
    rename_order(out, old_col, key_column(g.dimension, g.attribute));
    check_query(out, schema);
    return out;
}

}  // namespace

std::string default_display_attribute(const schema::CubeSchema& schema, std::string_view level) {
    const auto* l = schema.level(level);
    if (!l) throw QueryError("unknown level " + std::string(level));
    for (const auto& a : l->attributes) {
        if (a.kind == schema::AttributeKind::Datatype && ends_with(rdf::local_name(a.iri), "Name")) return a.iri;
    }
    return l->identifier;
}

OlapQuery roll_up(const OlapQuery& q, const schema::CubeSchema& schema, const std::string& dimension,
                  const std::string& to_level, std::optional<std::string> attribute) {
    OlapQuery probe = q;
    const auto& g = group_of(probe, dimension, "roll-up");
    if (g.level == to_level) throw QueryError("roll-up: " + to_level + " is the current level, not above it");
    schema::rollup_path(schema, g.level, to_level);  // PathNotFoundError when not above
    return regroup(q, schema, dimension, to_level, std::move(attribute));
}

OlapQuery drill_down(const OlapQuery& q, const schema::CubeSchema& schema, const std::string& dimension,
                     const std::string& to_level, std::optional<std::string> attribute) {
    OlapQuery probe = q;
    const auto& g = group_of(probe, dimension, "drill-down");
    if (g.level == to_level) throw QueryError("drill-down: " + to_level + " is the current level, not below it");
    const auto& base = base_of(q, schema, dimension);
    if (!schema::reachable(schema, base.level, to_level)) {
        throw QueryError("drill-down: " + to_level + " is below the cuboid base level " + base.level);
    }
    if (!schema::reachable(schema, to_level, g.level)) {
        throw QueryError("drill-down: " + to_level + " is not below " + g.level);
    }
    return regroup(q, schema, dimension, to_level, std::move(attribute));
}

OlapQuery slice(const OlapQuery& q, const schema::CubeSchema& schema, const std::string& dimension,
                const std::string& level, const std::string& attribute, const std::string& value) {
    OlapQuery out = q;
    const auto& g = group_of(out, dimension, "slice");
    rename_order(out, key_column(g.dimension, g.attribute), std::nullopt);
    out.group_by.erase(std::find(out.group_by.begin(), out.group_by.end(), g));
    auto leaf = Filter::attribute_test(level, attribute, Comparator::Eq, value);
    if (!out.filter || out.filter->is_true()) {
        out.filter = Filter::all({leaf});
    } else if (out.filter->kind == Filter::Kind::And) {
        out.filter->children.push_back(leaf);
    } else {
        out.filter = Filter::all({*out.filter, leaf});
    }
    check_query(out, schema);
    return out;
}

OlapQuery dice(const OlapQuery& q, const schema::CubeSchema& schema, const Filter& predicate) {
    OlapQuery out = q;
    if (!out.filter) {
        out.filter = Filter::all({predicate});
    } else if (out.filter->kind == Filter::Kind::And) {
        out.filter->children.push_back(predicate);
    } else {
        out.filter = Filter::all({*out.filter, predicate});
    }
    check_query(out, schema);
    return out;
}

ResultTable drill_across(const OlapQuery& a, const OlapQuery& b, const std::vector<std::string>& shared_levels,
                         const schema::CubeSchema& schema, const rdf::Graph& graph) {
    if (shared_levels.empty()) throw QueryError("drill-across needs at least one shared level");
    std::vector<std::string> shared_cols;
    std::vector<bool> shared_numeric;
    for (const auto& level : shared_levels) {
        auto find = [&](const OlapQuery& q) -> const GroupBy* {
            for (const auto& g : q.group_by) {
                if (g.level == level) return &g;
            }
            return nullptr;
        };
        const auto* ga = find(a);
        const auto* gb = find(b);
        if (!ga || !gb) throw QueryError("drill-across: both queries must group by shared level " + level);
        if (ga->dimension != gb->dimension || ga->attribute != gb->attribute) {
            throw QueryError("drill-across: shared level " + level + " is keyed differently in the two queries");
        }
        shared_cols.push_back(key_column(ga->dimension, ga->attribute));
        const auto* attr = schema.level(level)->attribute(ga->attribute);
        shared_numeric.push_back(attr->kind == schema::AttributeKind::Datatype && schema::is_numeric_datatype(attr->range));
    }

    auto ra = execute(compile(a, schema), graph);
    auto rb = execute(compile(b, schema), graph);

    struct Side {
        const ResultTable* t;
        std::vector<std::size_t> shared_idx;
        std::vector<std::size_t> rest_idx;
    };
    auto split = [&](const ResultTable& t) {
        Side s{&t, {}, {}};
        for (const auto& c : shared_cols) s.shared_idx.push_back(*t.column_index(c));
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            if (std::find(s.shared_idx.begin(), s.shared_idx.end(), i) == s.shared_idx.end()) s.rest_idx.push_back(i);
        }
        return s;
    };
    Side sa = split(ra), sb = split(rb);

    ResultTable out;
    for (const auto& c : shared_cols) out.columns.push_back({c, ColumnKind::Key});
    for (auto i : sa.rest_idx) out.columns.push_back({"A_" + ra.columns[i].name, ra.columns[i].kind});
    for (auto i : sb.rest_idx) out.columns.push_back({"B_" + rb.columns[i].name, rb.columns[i].kind});
    out.excluded = ra.excluded + rb.excluded;
    out.diagnostics = ra.diagnostics;
    out.diagnostics.insert(out.diagnostics.end(), rb.diagnostics.begin(), rb.diagnostics.end());

    auto key_of = [](const Side& s, const std::vector<Cell>& row) {
        std::vector<std::string> k;
        for (auto i : s.shared_idx) k.push_back(cell_text(row[i]));
        return k;
    };
    std::map<std::vector<std::string>, std::vector<const std::vector<Cell>*>> b_rows;
    for (const auto& r : rb.rows) b_rows[key_of(sb, r)].push_back(&r);
    std::set<std::vector<std::string>> matched;

    auto emit = [&](const std::vector<Cell>* ar, const std::vector<Cell>* br) {
        std::vector<Cell> row;
        const auto& src = ar ? *ar : *br;
        const auto& idx = ar ? sa.shared_idx : sb.shared_idx;
        for (auto i : idx) row.push_back(src[i]);
        for (auto i : sa.rest_idx) row.push_back(ar ? (*ar)[i] : Cell{});
        for (auto i : sb.rest_idx) row.push_back(br ? (*br)[i] : Cell{});
        out.rows.push_back(std::move(row));
    };
    for (const auto& r : ra.rows) {
        auto k = key_of(sa, r);
        auto it = b_rows.find(k);
        if (it == b_rows.end()) {
            emit(&r, nullptr);
            continue;
        }
        matched.insert(k);
        for (const auto* br : it->second) emit(&r, br);
    }
    for (const auto& r : rb.rows) {
        if (!matched.count(key_of(sb, r))) emit(nullptr, &r);
    }

    std::stable_sort(out.rows.begin(), out.rows.end(), [&](const auto& x, const auto& y) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            bool numeric = i < shared_numeric.size() ? shared_numeric[i] : out.columns[i].kind == ColumnKind::Aggregate;
            int c = compare_cells(x[i], y[i], numeric);
            if (c != 0) return c < 0;
        }
        return false;
    });
    return out;
}

}  // namespace kgcube::olap
