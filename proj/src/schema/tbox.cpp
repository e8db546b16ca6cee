#include "kgcube/schema/tbox.hpp"

#include <set>

#include "kgcube/rdf/vocab.hpp"

namespace kgcube::schema {

namespace {

using rdf::Graph;
using rdf::Term;

Term I(std::string_view s) { return rdf::iri(s); }

std::vector<std::string> typed(const Graph& g, std::string_view type) {
    std::vector<std::string> out;
    for (const auto& s : g.subjects(I(vocab::rdf::type), I(type))) {
        if (s.is_iri()) out.push_back(s.value());
    }
    return out;
}

std::vector<std::string> iri_objects(const Graph& g, const Term& s, std::string_view p) {
    std::vector<std::string> out;
    for (const auto& o : g.objects(s, I(p))) {
        if (o.is_iri()) out.push_back(o.value());
    }
    return out;
}

std::string first_iri(const Graph& g, const Term& s, std::string_view p) {
    auto v = iri_objects(g, s, p);
    return v.empty() ? std::string() : v.front();
}

class Loader {
public:
    explicit Loader(const Graph& g) : g_(g) {}

    CubeSchema run() {
        collect_levels();
        collect_dimensions();
        collect_hierarchies();
        collect_measures();
        collect_structures();
        collect_datasets();
        if (!dangling_.empty()) {
            std::string msg = "TBox has dangling references:";
            for (const auto& d : dangling_) msg += " " + d;
            throw SchemaError(msg, {dangling_.begin(), dangling_.end()});
        }
        normalize(s_);
        return std::move(s_);
    }

private:
    void dangling(const std::string& from, const std::string& to) { dangling_.insert(to + " (referenced by " + from + ")"); }

    void collect_levels() {
        for (const auto& l : typed(g_, vocab::qb4o::level_property)) s_.levels[l].iri = l;
        std::set<std::string> attrs;
        for (const auto& a : typed(g_, vocab::qb4o::level_attribute)) attrs.insert(a);

        std::map<std::string, std::set<std::string>> owned;
        for (auto& [iri, level] : s_.levels) {
            for (const auto& a : iri_objects(g_, I(iri), vocab::qb4o::has_attribute)) owned[iri].insert(a);
            level.identifier = first_iri(g_, I(iri), vocab::kgc::identifier);
        }
        for (const auto& a : attrs) {
            for (const auto& l : iri_objects(g_, I(a), vocab::qb4o::in_level)) {
                if (!s_.levels.count(l)) {
                    dangling(a, l);
                    continue;
                }
                owned[l].insert(a);
            }
        }
        for (auto& [iri, level] : s_.levels) {
            for (const auto& a : owned[iri]) {
                if (!attrs.count(a)) {
                    dangling(iri, a);
                    continue;
                }
                LevelAttribute attr;
                attr.iri = a;
                attr.range = first_iri(g_, I(a), vocab::rdfs::range);
                bool object = s_.levels.count(attr.range) ||
                              g_.contains(rdf::Triple(I(a), I(vocab::rdf::type), I(vocab::owl::object_property)));
                attr.kind = object ? AttributeKind::Object : AttributeKind::Datatype;
                if (object && !s_.levels.count(attr.range)) dangling(a, attr.range.empty() ? "<no range>" : attr.range);
                level.attributes.push_back(std::move(attr));
            }
        }
    }

    void collect_dimensions() {
        std::set<std::string> dims;
        for (const auto& d : typed(g_, vocab::qb::dimension_property)) dims.insert(d);
        for (const auto& d : typed(g_, vocab::qb4o::dimension_property)) dims.insert(d);
        for (const auto& d : dims) {
            Dimension dim;
            dim.iri = d;
            dim.hierarchies = iri_objects(g_, I(d), vocab::qb4o::has_hierarchy);
            s_.dimensions.emplace(d, std::move(dim));
        }
    }

    void collect_hierarchies() {
        for (const auto& h : typed(g_, vocab::qb4o::hierarchy)) {
            Hierarchy hier;
            hier.iri = h;
            hier.dimension = first_iri(g_, I(h), vocab::qb4o::in_dimension);
            if (!hier.dimension.empty() && !s_.dimensions.count(hier.dimension)) dangling(h, hier.dimension);
            for (const auto& l : iri_objects(g_, I(h), vocab::qb4o::has_level)) {
                if (!s_.levels.count(l)) dangling(h, l);
                hier.levels.push_back(l);
            }
            s_.hierarchies.emplace(h, std::move(hier));
        }
        for (const auto& [iri, d] : s_.dimensions) {
            for (const auto& h : d.hierarchies) {
                if (!s_.hierarchies.count(h)) dangling(iri, h);
            }
        }
        std::set<Term> steps;
        for (const auto& s : g_.subjects(I(vocab::rdf::type), I(vocab::qb4o::hierarchy_step))) steps.insert(s);
        for (const auto& t : g_.find(std::nullopt, I(vocab::qb4o::in_hierarchy), std::nullopt)) steps.insert(t.subject);
        for (const auto& node : steps) {
            std::string label = node.is_blank() ? "step _:" + node.value() : node.value();
            HierarchyStep st;
            st.child = first_iri(g_, node, vocab::qb4o::child_level);
            st.parent = first_iri(g_, node, vocab::qb4o::parent_level);
            st.rollup = first_iri(g_, node, vocab::qb4o::rollup);
            if (auto c = first_iri(g_, node, vocab::qb4o::pc_cardinality); !c.empty()) {
                auto parsed = cardinality_from_iri(c);
                if (!parsed) throw SchemaError("unknown cardinality " + c + " on " + label, {c});
                st.cardinality = *parsed;
            }
            for (const auto* lv : {&st.child, &st.parent}) {
                if (lv->empty() || !s_.levels.count(*lv)) dangling(label, lv->empty() ? "<missing level>" : *lv);
            }
            auto hs = iri_objects(g_, node, vocab::qb4o::in_hierarchy);
            if (hs.empty()) dangling(label, "<missing hierarchy>");
            for (const auto& h : hs) {
                auto it = s_.hierarchies.find(h);
                if (it == s_.hierarchies.end()) {
                    dangling(label, h);
                    continue;
                }
                it->second.steps.push_back(st);
            }
        }
    }

    void collect_measures() {
        for (const auto& m : typed(g_, vocab::qb::measure_property)) {
            Measure ms;
            ms.iri = m;
            ms.datatype = first_iri(g_, I(m), vocab::rdfs::range);
            if (auto f = first_iri(g_, I(m), vocab::qb4o::aggregate_function); !f.empty()) {
                auto parsed = aggregate_from_iri(f);
                if (!parsed) throw SchemaError("unknown aggregate function " + f + " on " + m, {f});
                ms.aggregate = *parsed;
            }
            s_.measures.emplace(m, std::move(ms));
        }
    }

    void collect_structures() {
        for (const auto& d : typed(g_, vocab::qb::data_structure_definition)) {
            CuboidStructure st;
            st.iri = d;
            for (const auto& c : g_.objects(I(d), I(vocab::qb::component))) {
                for (const auto& l : iri_objects(g_, c, vocab::qb4o::level)) {
                    if (!s_.levels.count(l)) {
                        dangling(d, l);
                        continue;
                    }
                    auto dims = s_.dimensions_of(l);
                    st.levels.push_back({dims.size() == 1 ? dims.front() : std::string(), l});
                }
                for (const auto& m : iri_objects(g_, c, vocab::qb::measure)) {
                    if (!s_.measures.count(m)) dangling(d, m);
                    st.measures.push_back(m);
                }
            }
            s_.structures.emplace(d, std::move(st));
        }
    }

    void collect_datasets() {
        for (const auto& d : typed(g_, vocab::qb::data_set_class)) {
            CubeDataset ds;
            ds.iri = d;
            ds.structure = first_iri(g_, I(d), vocab::qb::structure);
            if (ds.structure.empty() || !s_.structures.count(ds.structure)) {
                dangling(d, ds.structure.empty() ? "<missing structure>" : ds.structure);
            }
            s_.datasets.emplace(d, std::move(ds));
        }
    }

    const Graph& g_;
    CubeSchema s_;
    std::set<std::string> dangling_;
};

}  // namespace

rdf::PrefixMap standard_prefixes() {
    return {
        {"rdf", std::string(vocab::rdf_ns)},   {"rdfs", std::string(vocab::rdfs_ns)},
        {"owl", std::string(vocab::owl_ns)},   {"xsd", std::string(vocab::xsd_ns)},
        {"qb", std::string(vocab::qb_ns)},     {"qb4o", std::string(vocab::qb4o_ns)},
        {"skos", std::string(vocab::skos_ns)}, {"kgc", std::string(vocab::kgc_ns)},
    };
}

CubeSchema load_tbox(const rdf::Graph& graph) { return Loader(graph).run(); }

rdf::Graph serialize_tbox(const CubeSchema& schema, const rdf::PrefixMap& prefixes) {
    auto report = validate_tbox(schema);
    if (!report.empty()) {
        std::vector<std::string> details;
        for (const auto& v : report) details.push_back(v.subject + ": " + v.message);
        throw SchemaError("schema does not validate (" + std::to_string(report.size()) + " violations)", details);
    }

    Graph g;
    g.prefixes() = standard_prefixes();
    for (const auto& [k, v] : prefixes) g.prefixes()[k] = v;
    auto add = [&](const Term& s, std::string_view p, const Term& o) { g.insert(s, I(p), o); };

    for (const auto& [iri, d] : schema.dimensions) {
        add(I(iri), vocab::rdf::type, I(vocab::qb::dimension_property));
        for (const auto& h : d.hierarchies) add(I(iri), vocab::qb4o::has_hierarchy, I(h));
    }
    for (const auto& [iri, h] : schema.hierarchies) {
        add(I(iri), vocab::rdf::type, I(vocab::qb4o::hierarchy));
        add(I(iri), vocab::qb4o::in_dimension, I(h.dimension));
        for (const auto& l : h.levels) add(I(iri), vocab::qb4o::has_level, I(l));
        for (const auto& st : h.steps) {
            Term node = Term::blank(g.fresh_blank_label());
            add(node, vocab::rdf::type, I(vocab::qb4o::hierarchy_step));
            add(node, vocab::qb4o::in_hierarchy, I(iri));
            add(node, vocab::qb4o::child_level, I(st.child));
            add(node, vocab::qb4o::parent_level, I(st.parent));
            add(node, vocab::qb4o::pc_cardinality, I(cardinality_iri(st.cardinality)));
            add(node, vocab::qb4o::rollup, I(st.rollup));
        }
    }
    for (const auto& [iri, l] : schema.levels) {
        add(I(iri), vocab::rdf::type, I(vocab::qb4o::level_property));
        add(I(iri), vocab::kgc::identifier, I(l.identifier));
        for (const auto& a : l.attributes) {
            add(I(iri), vocab::qb4o::has_attribute, I(a.iri));
            add(I(a.iri), vocab::rdf::type, I(vocab::qb4o::level_attribute));
            add(I(a.iri), vocab::rdf::type,
                I(a.kind == AttributeKind::Object ? vocab::owl::object_property : vocab::owl::datatype_property));
            add(I(a.iri), vocab::qb4o::in_level, I(iri));
            add(I(a.iri), vocab::rdfs::range, I(a.range));
        }
    }
    for (const auto& [iri, m] : schema.measures) {
        add(I(iri), vocab::rdf::type, I(vocab::qb::measure_property));
        add(I(iri), vocab::rdfs::range, I(m.datatype));
        add(I(iri), vocab::qb4o::aggregate_function, I(aggregate_iri(m.aggregate)));
    }
    for (const auto& [iri, st] : schema.structures) {
        add(I(iri), vocab::rdf::type, I(vocab::qb::data_structure_definition));
        for (const auto& b : st.levels) {
            Term node = Term::blank(g.fresh_blank_label());
            add(I(iri), vocab::qb::component, node);
            add(node, vocab::qb4o::level, I(b.level));
        }
        for (const auto& m : st.measures) {
            Term node = Term::blank(g.fresh_blank_label());
            add(I(iri), vocab::qb::component, node);
            add(node, vocab::qb::measure, I(m));
            add(node, vocab::qb4o::aggregate_function, I(aggregate_iri(schema.measures.at(m).aggregate)));
        }
    }
    for (const auto& [iri, ds] : schema.datasets) {
        add(I(iri), vocab::rdf::type, I(vocab::qb::data_set_class));
        add(I(iri), vocab::qb::structure, I(ds.structure));
    }
    return g;
}

}  // namespace kgcube::schema
