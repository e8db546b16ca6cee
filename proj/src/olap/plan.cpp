#include "kgcube/olap/plan.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "kgcube/rdf/term.hpp"
#include "kgcube/rdf/vocab.hpp"

namespace kgcube::olap {

std::string_view to_string(StageKind k) {
    switch (k) {
        case StageKind::ObservationScan: return "ObservationScan";
        case StageKind::MemberJoin: return "MemberJoin";
        case StageKind::AttributeFetch: return "AttributeFetch";
        case StageKind::FilterApply: return "FilterApply";
        case StageKind::GroupAggregate: return "GroupAggregate";
        case StageKind::Sort: return "Sort";
    }
    return "";
}

std::vector<PlanPattern> AlgebraPlan::patterns() const {
    std::vector<PlanPattern> out;
    for (const auto& s : stages) out.insert(out.end(), s.patterns.begin(), s.patterns.end());
    return out;
}

std::optional<std::string> AlgebraPlan::member_var(std::string_view level) const {
    for (const auto& c : chains) {
        if (c.base_level == level) return c.base_var;
        for (const auto& h : c.hops) {
            if (h.parent_level == level) return h.parent_var;
        }
    }
    return std::nullopt;
}

namespace {

constexpr const char* obs = "o";

bool numeric_attribute(const schema::LevelAttribute& a) {
    return a.kind == schema::AttributeKind::Datatype && schema::is_numeric_datatype(a.range);
}

void collect_filter_levels(const Filter& f, std::vector<std::pair<std::string, std::string>>& attrs,
                           std::vector<std::string>& measures) {
    switch (f.kind) {
        case Filter::Kind::Attribute:
            if (std::find(attrs.begin(), attrs.end(), std::pair(f.level, f.attribute)) == attrs.end()) {
                attrs.emplace_back(f.level, f.attribute);
            }
            break;
        case Filter::Kind::Measure:
            if (std::find(measures.begin(), measures.end(), f.measure) == measures.end()) measures.push_back(f.measure);
            break;
        default:
            for (const auto& c : f.children) collect_filter_levels(c, attrs, measures);
    }
}

std::string filter_var(std::string_view level, std::string_view attribute) {
    return rdf::local_name(level) + "_" + rdf::local_name(attribute);
}

std::string member_var_name(std::string_view dimension, std::string_view level) {
    return rdf::local_name(dimension) + "_" + rdf::local_name(level);
}

class Compiler {
public:
    Compiler(const OlapQuery& q, const schema::CubeSchema& s, const CompileOptions& o) : q_(q), s_(s), o_(o) {}

    AlgebraPlan run() {
        check_query(q_, s_);
        const auto* ds = s_.dataset(q_.dataset);
        const auto* st = s_.structure(ds->structure);
        plan_.dataset = ds->iri;
        plan_.structure = st->iri;

        std::vector<std::pair<std::string, std::string>> filter_attrs;
        std::vector<std::string> filter_measures;
        if (q_.filter) collect_filter_levels(*q_.filter, filter_attrs, filter_measures);

        // measures: aggregates first, then filter-only ones
        for (const auto& a : q_.aggregates) add_measure(a.measure);
        for (const auto& m : filter_measures) add_measure(m);

        // dimensions in groupBy order, then others in cuboid order
        std::vector<std::string> dims;
        std::map<std::string, std::vector<std::string>> needed;  // dimension -> levels in join order
        auto need = [&](const std::string& dim, const std::string& level) {
            if (std::find(dims.begin(), dims.end(), dim) == dims.end()) dims.push_back(dim);
            auto& v = needed[dim];
            if (std::find(v.begin(), v.end(), level) == v.end()) v.push_back(level);
        };
        for (const auto& g : q_.group_by) need(g.dimension, g.level);
        std::vector<std::string> late;
        for (const auto& [level, attr] : filter_attrs) late.push_back(level);
        for (const auto& l : o_.extra_levels) late.push_back(l);
        std::vector<std::pair<std::string, std::string>> late_dims;
        for (const auto& level : late) {
            if (!s_.level(level)) throw QueryError("unknown level " + level, {"unknown level " + level});
            auto dim = dimension_for_level(s_, *st, level);
            if (!dim) {
                std::string msg = "level " + level + " is not reachable from exactly one base level of " + st->iri;
                throw QueryError(msg, {msg});
            }
            late_dims.emplace_back(*dim, level);
        }
        std::sort(late_dims.begin(), late_dims.end(), [&](const auto& a, const auto& b) {
            return dim_rank(*st, a.first) < dim_rank(*st, b.first);
        });
        for (const auto& [dim, level] : late_dims) need(dim, level);

        auto scan = scan_stage();
        plan_.stages.push_back(std::move(scan));
        for (const auto& dim : dims) {
            const auto* base = st->base_for(dim);
            DimensionChain chain{dim, base->level, member_var_name(dim, base->level), {}};
            Stage join{StageKind::MemberJoin, "MemberJoin " + rdf::local_name(dim), {obs}, {chain.base_var}, {}};
            join.patterns.push_back({Slot::var(obs), Slot::iri(base->level), Slot::var(chain.base_var)});
            join.patterns.push_back(
                {Slot::var(chain.base_var), Slot::iri(std::string(vocab::qb4o::member_of)), Slot::iri(base->level)});
            std::set<std::string> joined{base->level};
            std::vector<std::string> order{base->level};
            for (const auto& level : needed[dim]) {
                for (const auto& step : schema::rollup_path(s_, base->level, level)) {
                    if (joined.count(step.parent)) continue;
                    joined.insert(step.parent);
                    order.push_back(step.parent);
                    Hop hop{member_var_name(dim, step.child), step.rollup, member_var_name(dim, step.parent), step.parent};
                    join.patterns.push_back({Slot::var(hop.child_var), Slot::iri(hop.rollup), Slot::var(hop.parent_var)});
                    join.patterns.push_back(
                        {Slot::var(hop.parent_var), Slot::iri(std::string(vocab::qb4o::member_of)), Slot::iri(step.parent)});
                    join.consumes.push_back(hop.child_var);
                    join.produces.push_back(hop.parent_var);
                    chain.hops.push_back(std::move(hop));
                }
            }
            plan_.stages.push_back(std::move(join));

            Stage fetch{StageKind::AttributeFetch, "AttributeFetch " + rdf::local_name(dim), {}, {}, {}};
            const GroupBy* g = q_.group_for(dim);
            for (const auto& level : order) {
                std::string mvar = member_var_name(dim, level);
                for (const auto& [flevel, fattr] : filter_attrs) {
                    if (flevel != level) continue;
                    std::string v = filter_var(flevel, fattr);
                    if (filter_vars_.count({flevel, fattr})) continue;
                    filter_vars_[{flevel, fattr}] = v;
                    fetch.patterns.push_back({Slot::var(mvar), Slot::iri(fattr), Slot::var(v)});
                    fetch.consumes.push_back(mvar);
                    fetch.produces.push_back(v);
                }
                if (g && g->level == level) {
                    KeyBinding key{key_column(dim, g->attribute), dim, g->level, g->attribute,
                                   numeric_attribute(*s_.level(g->level)->attribute(g->attribute))};
                    fetch.patterns.push_back({Slot::var(mvar), Slot::iri(g->attribute), Slot::var(key.column)});
                    fetch.consumes.push_back(mvar);
                    fetch.produces.push_back(key.column);
                    plan_.keys.push_back(std::move(key));
                }
            }
            plan_.chains.push_back(std::move(chain));
            if (!fetch.patterns.empty()) plan_.stages.push_back(std::move(fetch));
        }
        // keys follow groupBy order regardless of join order
        std::vector<KeyBinding> keys;
        for (const auto& g : q_.group_by) {
            for (const auto& k : plan_.keys) {
                if (k.dimension == g.dimension) keys.push_back(k);
            }
        }
        plan_.keys = std::move(keys);

        if (q_.filter && !q_.filter->is_true()) {
            plan_.filter = bind(*q_.filter);
            Stage f{StageKind::FilterApply, "FilterApply", {}, {}, {}};
            collect_vars(*plan_.filter, f.consumes);
            plan_.stages.push_back(std::move(f));
        }

        Stage agg{StageKind::GroupAggregate, "GroupAggregate", {}, {}, {}};
        for (const auto& k : plan_.keys) agg.consumes.push_back(k.column);
        for (const auto& a : q_.aggregates) {
            AggregateBinding b{aggregate_column(a), a.measure, measure_vars_.at(a.measure), a.function};
            agg.consumes.push_back(b.var);
            agg.produces.push_back(b.column);
            plan_.aggregates.push_back(std::move(b));
        }
        plan_.stages.push_back(std::move(agg));

        plan_.order_by = q_.order_by;
        for (const auto& k : plan_.keys) {
            if (std::find(plan_.order_by.begin(), plan_.order_by.end(), k.column) == plan_.order_by.end()) {
                plan_.order_by.push_back(k.column);
            }
        }
        plan_.stages.push_back({StageKind::Sort, "Sort", plan_.order_by, {}, {}});
        check_names();
        return std::move(plan_);
    }

private:
    static std::size_t dim_rank(const schema::CuboidStructure& st, const std::string& dim) {
        for (std::size_t i = 0; i < st.levels.size(); ++i) {
            if (st.levels[i].dimension == dim) return i;
        }
        return st.levels.size();
    }

    void add_measure(const std::string& m) {
        if (measure_vars_.count(m)) return;
        std::string v = "m" + std::to_string(plan_.measures.size() + 1);
        measure_vars_[m] = v;
        plan_.measures.push_back({m, v});
    }

    Stage scan_stage() {
        Stage s{StageKind::ObservationScan, "ObservationScan", {}, {obs}, {}};
        s.patterns.push_back(
            {Slot::var(obs), Slot::iri(std::string(vocab::rdf::type)), Slot::iri(std::string(vocab::qb::observation))});
        s.patterns.push_back({Slot::var(obs), Slot::iri(std::string(vocab::qb::data_set)), Slot::iri(plan_.dataset)});
        for (const auto& m : plan_.measures) {
            s.patterns.push_back({Slot::var(obs), Slot::iri(m.measure), Slot::var(m.var)});
            s.produces.push_back(m.var);
        }
        return s;
    }

    BoundFilter bind(const Filter& f) const {
        BoundFilter b;
        b.kind = f.kind;
        b.op = f.op;
        b.value = f.value;
        switch (f.kind) {
            case Filter::Kind::Attribute:
                b.var = filter_vars_.at({f.level, f.attribute});
                b.numeric = numeric_attribute(*s_.level(f.level)->attribute(f.attribute));
                break;
            case Filter::Kind::Measure:
                b.var = measure_vars_.at(f.measure);
                b.numeric = true;
                break;
            default:
                for (const auto& c : f.children) b.children.push_back(bind(c));
        }
        return b;
    }

    static void collect_vars(const BoundFilter& f, std::vector<std::string>& out) {
        if (!f.var.empty() && std::find(out.begin(), out.end(), f.var) == out.end()) out.push_back(f.var);
        for (const auto& c : f.children) collect_vars(c, out);
    }

    // Distinct roles must not share a variable name.
    void check_names() const {
        std::map<std::string, std::string> roles;
        auto claim = [&](const std::string& var, const std::string& role) {
            auto [it, fresh] = roles.emplace(var, role);
            if (!fresh && it->second != role) {
                std::string msg = "variable ?" + var + " would be bound twice (" + it->second + ", " + role + ")";
                throw QueryError(msg, {msg});
            }
        };
        claim(obs, "observation");
        for (const auto& m : plan_.measures) claim(m.var, "measure " + m.measure);
        for (const auto& c : plan_.chains) {
            claim(c.base_var, "member " + c.base_level);
            for (const auto& h : c.hops) claim(h.parent_var, "member " + h.parent_level);
        }
        for (const auto& [k, v] : filter_vars_) claim(v, "filter " + k.first + " " + k.second);
        for (const auto& k : plan_.keys) claim(k.column, "key " + k.attribute);
        for (const auto& a : plan_.aggregates) claim(a.column, "aggregate");
    }

    const OlapQuery& q_;
    const schema::CubeSchema& s_;
    const CompileOptions& o_;
    AlgebraPlan plan_;
    std::map<std::string, std::string> measure_vars_;
    std::map<std::pair<std::string, std::string>, std::string> filter_vars_;
};

}  // namespace

AlgebraPlan compile(const OlapQuery& q, const schema::CubeSchema& schema, const CompileOptions& options) {
    return Compiler(q, schema, options).run();
}

}  // namespace kgcube::olap
