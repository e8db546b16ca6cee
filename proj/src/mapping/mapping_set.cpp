#include "kgcube/mapping/mapping_set.hpp"

#include <algorithm>

namespace kgcube::mapping {

namespace {

using rdf::Graph;
using rdf::Term;

std::optional<Term> one(const Graph& g, const Term& s, const std::string& p) {
    auto objs = g.objects(s, rdf::iri(p));
    if (objs.empty()) return std::nullopt;
    if (objs.size() > 1) throw MappingError(s.value() + " has more than one value for " + p);
    return objs.front();
}

std::vector<Term> instances(const Graph& g, const std::string& ns, std::initializer_list<const char*> classes) {
    std::vector<Term> out;
    for (const char* c : classes) {
        for (const auto& s : g.subjects(rdf::iri(vocab::rdf::type), rdf::iri(ns + c))) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string label(const Term& t) { return t.is_blank() ? "_:" + t.value() : t.value(); }

class Reader {
public:
    Reader(const Graph& g, const std::vector<SourceTBox>& sources, const schema::CubeSchema& target, std::string_view ns)
        : g_(g), sources_(sources), target_(target), ns_(ns) {}

    MappingSet run() {
        auto datasets = instances(g_, ns_, {"Dataset"});
        if (datasets.empty()) throw MappingError("no dataset mapping (map:Dataset) found");
        if (datasets.size() > 1) throw MappingError("expected exactly one dataset mapping, found " + std::to_string(datasets.size()));
        const Term& ds = datasets.front();
        MappingSet set;
        set.iri = label(ds);
        if (auto v = one(g_, ds, ns_ + "sourceTBox")) set.source_tbox_location = v->value();
        if (auto v = one(g_, ds, ns_ + "targetTBox")) set.target_tbox_location = v->value();

        std::map<Term, std::size_t> by_node;
        for (const auto& node : instances(g_, ns_, {"ConceptMapping", "ConceptMapper"})) {
            auto owner = one(g_, node, ns_ + "dataset");
            if (!owner || *owner != ds) throw MappingError("concept mapping " + label(node) + " is not attached to " + set.iri);
            set.concepts.push_back(concept_mapping(node));
            by_node[node] = set.concepts.size() - 1;
        }
        if (set.concepts.empty()) throw MappingError("dataset mapping " + set.iri + " has no concept mapping");

        for (const auto& node : instances(g_, ns_, {"PropertyMapping", "PropertyMapper"})) {
            auto owner = one(g_, node, ns_ + "conceptMapping");
            if (!owner) throw MappingError("property mapping " + label(node) + " has no map:conceptMapping");
            auto it = by_node.find(*owner);
            if (it == by_node.end()) {
                throw MappingError("property mapping " + label(node) + " names unknown concept mapping " + label(*owner));
            }
            auto& cm = set.concepts[it->second];
            cm.properties.push_back(property(node, cm));
        }
        for (auto& cm : set.concepts) {
            std::sort(cm.properties.begin(), cm.properties.end(),
                      [](const PropertyMapping& a, const PropertyMapping& b) { return a.target_property < b.target_property; });
            for (std::size_t i = 1; i < cm.properties.size(); ++i) {
                if (cm.properties[i].target_property == cm.properties[i - 1].target_property) {
                    throw MappingError("concept mapping " + cm.iri + " maps " + cm.properties[i].target_property + " twice");
                }
            }
        }
        std::sort(set.concepts.begin(), set.concepts.end(),
                  [](const ConceptMapping& a, const ConceptMapping& b) { return a.iri < b.iri; });
        return set;
    }

private:
    const SourceTBox& source(const std::string& concept_iri, const std::string& from) const {
        for (const auto& s : sources_) {
            if (s.class_iri == concept_iri) return s;
        }
        throw MappingError(from + ": source concept " + concept_iri + " is not in the source TBox");
    }

    void check_columns(const Expression& e, const SourceTBox& src, const std::string& from) const {
        for (const auto& c : e.columns()) {
            if (!src.by_column(c)) throw MappingError(from + ": column '" + c + "' is not a property of " + src.class_iri);
        }
    }

    Expression column_of(const Term& ref, const SourceTBox& src, const std::string& from) const {
        if (ref.is_iri()) {
            const auto* p = src.by_iri(ref.value());
            if (!p) throw MappingError(from + ": source property " + ref.value() + " is not in " + src.class_iri);
            return Expression::column(p->column);
        }
        if (!src.by_column(ref.value())) {
            throw MappingError(from + ": column '" + ref.value() + "' is not a property of " + src.class_iri);
        }
        return Expression::column(ref.value());
    }

    Expression parse_text(const Term& t, const std::string& from) const {
        try {
            return Expression::parse(t.value());
        } catch (const ExpressionError& e) {
            throw MappingError(from + ": " + e.what());
        }
    }

    ConceptMapping concept_mapping(const Term& node) {
        ConceptMapping cm;
        cm.iri = label(node);
        auto sc = one(g_, node, ns_ + "sourceConcept");
        auto tc = one(g_, node, ns_ + "targetConcept");
        if (!sc || !sc->is_iri()) throw MappingError(cm.iri + ": missing map:sourceConcept");
        if (!tc || !tc->is_iri()) throw MappingError(cm.iri + ": missing map:targetConcept");
        cm.source_concept = sc->value();
        cm.target_concept = tc->value();
        const SourceTBox& src = source(cm.source_concept, cm.iri);

        if (target_.level(cm.target_concept)) {
            cm.target_kind = TargetKind::Level;
        } else if (target_.structure(cm.target_concept)) {
            cm.target_kind = TargetKind::Structure;
        } else {
            throw MappingError(cm.iri + ": target concept " + cm.target_concept + " is neither a level nor a cuboid structure");
        }

        if (auto rel = one(g_, node, ns_ + "relation"); rel && rel->value() != vocab::skos::exact_match) {
            throw MappingError(cm.iri + ": unsupported concept relation " + rel->value() + " (only skos:exactMatch)");
        }

        auto value = one(g_, node, ns_ + "iriValue");
        if (!value) throw MappingError(cm.iri + ": missing map:iriValue");
        auto type = one(g_, node, ns_ + "iriValueType");
        if (type) {
            if (type->value() == ns_ + "SourceAttribute") {
                cm.iri_value_type = IriValueType::SourceAttribute;
            } else if (type->value() == ns_ + "Expression") {
                cm.iri_value_type = IriValueType::Expression;
            } else {
                throw MappingError(cm.iri + ": unknown map:iriValueType " + type->value());
            }
        } else {
            cm.iri_value_type = value->is_iri() ? IriValueType::SourceAttribute : IriValueType::Expression;
        }
        if (cm.iri_value_type == IriValueType::SourceAttribute) {
            cm.iri_value = column_of(*value, src, cm.iri);
        } else {
            if (!value->is_literal()) throw MappingError(cm.iri + ": expression iriValue must be a literal");
            cm.iri_value = parse_text(*value, cm.iri);
            check_columns(cm.iri_value, src, cm.iri);
        }

        if (auto m = one(g_, node, ns_ + "matchedInstances"); m && m->value() != "All") {
            cm.matched_instances = parse_text(*m, cm.iri);
            check_columns(*cm.matched_instances, src, cm.iri);
        }
        return cm;
    }

    PropertyMapping property(const Term& node, const ConceptMapping& cm) {
        PropertyMapping pm;
        pm.iri = label(node);
        auto tp = one(g_, node, ns_ + "targetProperty");
        if (!tp || !tp->is_iri()) throw MappingError(pm.iri + ": missing map:targetProperty");
        pm.target_property = tp->value();

        bool known = false;
        if (cm.target_kind == TargetKind::Level) {
            known = target_.level(cm.target_concept)->attribute(pm.target_property) != nullptr;
        } else {
            const auto* st = target_.structure(cm.target_concept);
            known = st->has_measure(pm.target_property) ||
                    std::any_of(st->levels.begin(), st->levels.end(),
                                [&](const schema::BaseLevel& b) { return b.level == pm.target_property; });
        }
        if (!known) {
            throw MappingError(pm.iri + ": target property " + pm.target_property + " is not defined on " + cm.target_concept);
        }

        const SourceTBox& src = source(cm.source_concept, pm.iri);
        auto sp = one(g_, node, ns_ + "sourceProperty");
        auto ex = one(g_, node, ns_ + "expression");
        if (sp && ex) throw MappingError(pm.iri + ": give either map:sourceProperty or map:expression, not both");
        if (sp) {
            pm.source = column_of(*sp, src, pm.iri);
        } else if (ex) {
            pm.source = parse_text(*ex, pm.iri);
            check_columns(pm.source, src, pm.iri);
        } else {
            throw MappingError(pm.iri + ": property mapping has no source property or expression");
        }
        return pm;
    }

    const Graph& g_;
    const std::vector<SourceTBox>& sources_;
    const schema::CubeSchema& target_;
    std::string ns_;
};

}  // namespace

const PropertyMapping* ConceptMapping::property(std::string_view target_property) const {
    for (const auto& p : properties) {
        if (p.target_property == target_property) return &p;
    }
    return nullptr;
}

const ConceptMapping* MappingSet::for_source(std::string_view source_concept) const {
    for (const auto& c : concepts) {
        if (c.source_concept == source_concept) return &c;
    }
    return nullptr;
}

MappingSet parse_mappings(const rdf::Graph& graph, const std::vector<SourceTBox>& sources,
                          const schema::CubeSchema& target, std::string_view map_ns) {
    return Reader(graph, sources, target, map_ns).run();
}

}  // namespace kgcube::mapping
