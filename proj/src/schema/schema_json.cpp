#include "kgcube/schema/schema_json.hpp"

namespace kgcube::schema {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw SchemaError(std::string("schema document: missing field '") + key + "'");
    return obj.at(key);
}

std::string text(const json& obj, const char* key) {
    const auto& v = field(obj, key);
    if (!v.is_string()) throw SchemaError(std::string("schema document: field '") + key + "' must be a string");
    return v.get<std::string>();
}

std::vector<std::string> texts(const json& obj, const char* key) {
    if (!obj.contains(key)) return {};
    const auto& v = obj.at(key);
    if (!v.is_array()) throw SchemaError(std::string("schema document: field '") + key + "' must be an array");
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string()) throw SchemaError(std::string("schema document: '") + key + "' entries must be strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

const json& array(const json& obj, const char* key) {
    static const json empty = json::array();
    if (!obj.contains(key)) return empty;
    const auto& v = obj.at(key);
    if (!v.is_array()) throw SchemaError(std::string("schema document: field '") + key + "' must be an array");
    return v;
}

}  // namespace

json to_json(const CubeSchema& s) {
    json doc = {{"dimensions", json::array()}, {"hierarchies", json::array()}, {"levels", json::array()},
                {"measures", json::array()},   {"structures", json::array()},  {"datasets", json::array()}};
    for (const auto& [iri, d] : s.dimensions) doc["dimensions"].push_back({{"iri", iri}, {"hierarchies", d.hierarchies}});
    for (const auto& [iri, h] : s.hierarchies) {
        json steps = json::array();
        for (const auto& st : h.steps) {
            steps.push_back({{"child", st.child},
                             {"parent", st.parent},
                             {"rollup", st.rollup},
                             {"cardinality", std::string(to_string(st.cardinality))}});
        }
        doc["hierarchies"].push_back({{"iri", iri}, {"dimension", h.dimension}, {"levels", h.levels}, {"steps", steps}});
    }
    for (const auto& [iri, l] : s.levels) {
        json attrs = json::array();
        for (const auto& a : l.attributes) {
            attrs.push_back({{"iri", a.iri},
                             {"kind", a.kind == AttributeKind::Object ? "object" : "datatype"},
                             {"range", a.range}});
        }
        doc["levels"].push_back({{"iri", iri}, {"identifier", l.identifier}, {"attributes", attrs}});
    }
    for (const auto& [iri, m] : s.measures) {
        doc["measures"].push_back({{"iri", iri}, {"datatype", m.datatype}, {"aggregate", std::string(to_string(m.aggregate))}});
    }
    for (const auto& [iri, st] : s.structures) {
        json levels = json::array();
        for (const auto& b : st.levels) levels.push_back({{"dimension", b.dimension}, {"level", b.level}});
        doc["structures"].push_back({{"iri", iri}, {"levels", levels}, {"measures", st.measures}});
    }
    for (const auto& [iri, ds] : s.datasets) doc["datasets"].push_back({{"iri", iri}, {"structure", ds.structure}});
    return doc;
}

CubeSchema schema_from_json(const json& doc) {
    if (!doc.is_object()) throw SchemaError("schema document must be a JSON object");
    CubeSchema s;
    for (const auto& d : array(doc, "dimensions")) {
        Dimension dim{text(d, "iri"), texts(d, "hierarchies")};
        s.dimensions[dim.iri] = std::move(dim);
    }
    for (const auto& h : array(doc, "hierarchies")) {
        Hierarchy hier;
        hier.iri = text(h, "iri");
        hier.dimension = text(h, "dimension");
        hier.levels = texts(h, "levels");
        for (const auto& st : array(h, "steps")) {
            HierarchyStep step{text(st, "child"), text(st, "parent"), text(st, "rollup"), Cardinality::OneToMany};
            if (st.contains("cardinality")) step.cardinality = parse_cardinality(text(st, "cardinality"));
            hier.steps.push_back(std::move(step));
        }
        s.hierarchies[hier.iri] = std::move(hier);
    }
    for (const auto& l : array(doc, "levels")) {
        Level level;
        level.iri = text(l, "iri");
        level.identifier = text(l, "identifier");
        for (const auto& a : array(l, "attributes")) {
            auto kind = a.contains("kind") ? text(a, "kind") : std::string("datatype");
            if (kind != "object" && kind != "datatype") throw SchemaError("schema document: unknown attribute kind " + kind);
            level.attributes.push_back(
                {text(a, "iri"), kind == "object" ? AttributeKind::Object : AttributeKind::Datatype, text(a, "range")});
        }
        s.levels[level.iri] = std::move(level);
    }
    for (const auto& m : array(doc, "measures")) {
        Measure ms{text(m, "iri"), text(m, "datatype"), AggregateFunction::Sum};
        if (m.contains("aggregate")) ms.aggregate = parse_aggregate(text(m, "aggregate"));
        s.measures[ms.iri] = std::move(ms);
    }
    for (const auto& st : array(doc, "structures")) {
        CuboidStructure cs;
        cs.iri = text(st, "iri");
        for (const auto& b : array(st, "levels")) {
            std::string level = text(b, "level");
            std::string dim = b.contains("dimension") ? text(b, "dimension") : std::string();
            cs.levels.push_back({std::move(dim), std::move(level)});
        }
        cs.measures = texts(st, "measures");
        s.structures[cs.iri] = std::move(cs);
    }
    // A base level given without its dimension takes the only dimension that holds it.
    for (auto& [iri, cs] : s.structures) {
        for (auto& b : cs.levels) {
            if (!b.dimension.empty()) continue;
            auto dims = s.dimensions_of(b.level);
            if (dims.size() == 1) b.dimension = dims.front();
        }
    }
    for (const auto& d : array(doc, "datasets")) {
        CubeDataset ds{text(d, "iri"), text(d, "structure")};
        s.datasets[ds.iri] = std::move(ds);
    }
    normalize(s);
    return s;
}

}  // namespace kgcube::schema
