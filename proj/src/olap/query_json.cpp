#include "kgcube/olap/query_json.hpp"

#include <fstream>

namespace kgcube::olap {

using nlohmann::json;
using Prefixes = std::map<std::string, std::string>;

namespace {

std::string text(const json& doc, const char* key, const char* where, const Prefixes& prefixes, bool iri = true) {
    if (!doc.is_object() || !doc.contains(key)) throw QueryError(std::string(where) + ": missing \"" + key + "\"");
    const auto& v = doc.at(key);
    std::string s;
    if (v.is_string()) {
        s = v.get<std::string>();
    } else if (v.is_number() && !iri) {
        s = v.dump();
    } else {
        throw QueryError(std::string(where) + ": \"" + key + "\" must be a string");
    }
    return iri ? expand_curie(s, prefixes) : s;
}

}  // namespace

std::string expand_curie(const std::string& text, const Prefixes& prefixes) {
    auto colon = text.find(':');
    if (colon == std::string::npos || text.compare(colon, 3, "://") == 0) return text;
    auto it = prefixes.find(text.substr(0, colon));
    if (it == prefixes.end()) return text;
    return it->second + text.substr(colon + 1);
}

Filter filter_from_json(const json& doc, const Prefixes& prefixes) {
    if (!doc.is_object()) throw QueryError("filter: expected an object");
    for (const char* key : {"and", "or"}) {
        if (!doc.contains(key)) continue;
        const auto& list = doc.at(key);
        if (!list.is_array()) throw QueryError(std::string("filter: \"") + key + "\" must be an array");
        std::vector<Filter> children;
        for (const auto& c : list) children.push_back(filter_from_json(c, prefixes));
        return key[0] == 'a' ? Filter::all(std::move(children)) : Filter::any(std::move(children));
    }
    Comparator op = parse_comparator(text(doc, "op", "filter", prefixes, false));
    std::string value = text(doc, "value", "filter", prefixes, false);
    if (doc.contains("measure")) return Filter::measure_test(text(doc, "measure", "filter", prefixes), op, value);
    return Filter::attribute_test(text(doc, "level", "filter", prefixes), text(doc, "attribute", "filter", prefixes), op,
                                  value);
}

json to_json(const Filter& f) {
    switch (f.kind) {
        case Filter::Kind::And:
        case Filter::Kind::Or: {
            json list = json::array();
            for (const auto& c : f.children) list.push_back(to_json(c));
            return {{f.kind == Filter::Kind::And ? "and" : "or", list}};
        }
        case Filter::Kind::Measure:
            return {{"measure", f.measure}, {"op", std::string(to_string(f.op))}, {"value", f.value}};
        case Filter::Kind::Attribute:
            return {{"level", f.level}, {"attribute", f.attribute}, {"op", std::string(to_string(f.op))}, {"value", f.value}};
    }
    return json::object();
}

OlapQuery query_from_json(const json& doc) {
    if (!doc.is_object()) throw QueryError("query: expected a JSON object");
    Prefixes prefixes;
    if (doc.contains("prefixes")) {
        if (!doc.at("prefixes").is_object()) throw QueryError("query: \"prefixes\" must be an object");
        for (const auto& [k, v] : doc.at("prefixes").items()) {
            if (!v.is_string()) throw QueryError("query: prefix " + k + " must map to a string");
            prefixes[k] = v.get<std::string>();
        }
    }
    OlapQuery q;
    q.dataset = text(doc, "dataset", "query", prefixes);
    auto list = [&](const char* key) -> const json& {
        static const json empty = json::array();
        if (!doc.contains(key)) return empty;
        if (!doc.at(key).is_array()) throw QueryError(std::string("query: \"") + key + "\" must be an array");
        return doc.at(key);
    };
    for (const auto& g : list("groupBy")) {
        q.group_by.push_back({text(g, "dimension", "groupBy", prefixes), text(g, "level", "groupBy", prefixes),
                              text(g, "attribute", "groupBy", prefixes)});
    }
    for (const auto& a : list("aggregates")) {
        Aggregate agg{text(a, "measure", "aggregates", prefixes), AggregateFunction::Sum};
        try {
            agg.function = schema::parse_aggregate(text(a, "function", "aggregates", prefixes, false));
        } catch (const SchemaError& e) {
            throw QueryError(std::string("aggregates: ") + e.what());
        }
        q.aggregates.push_back(std::move(agg));
    }
    if (doc.contains("filter") && !doc.at("filter").is_null()) q.filter = filter_from_json(doc.at("filter"), prefixes);
    for (const auto& o : list("orderBy")) {
        if (!o.is_string()) throw QueryError("orderBy: entries must be strings");
        q.order_by.push_back(o.get<std::string>());
    }
    return q;
}

json to_json(const OlapQuery& q) {
    json groups = json::array();
    for (const auto& g : q.group_by) groups.push_back({{"dimension", g.dimension}, {"level", g.level}, {"attribute", g.attribute}});
    json aggs = json::array();
    for (const auto& a : q.aggregates) aggs.push_back({{"measure", a.measure}, {"function", std::string(schema::to_string(a.function))}});
    json out = {{"dataset", q.dataset}, {"groupBy", groups}, {"aggregates", aggs}, {"orderBy", q.order_by}};
    if (q.filter) out["filter"] = to_json(*q.filter);
    return out;
}

OlapQuery load_query_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw QueryError("cannot read query file " + path.string());
    try {
        return query_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw QueryError("query file " + path.string() + ": " + e.what());
    }
}

bool is_drill_across(const json& doc) { return doc.is_object() && doc.contains("drillAcross"); }

DrillAcrossQuery drill_across_from_json(const json& doc) {
    if (!is_drill_across(doc) || !doc.at("drillAcross").is_object()) throw QueryError("drillAcross: expected an object");
    const auto& d = doc.at("drillAcross");
    for (const char* key : {"left", "right", "shared"}) {
        if (!d.contains(key)) throw QueryError(std::string("drillAcross: missing \"") + key + "\"");
    }
    Prefixes prefixes;
    if (d.contains("prefixes") && d.at("prefixes").is_object()) {
        for (const auto& [k, v] : d.at("prefixes").items()) {
            if (v.is_string()) prefixes[k] = v.get<std::string>();
        }
    }
    DrillAcrossQuery out{query_from_json(d.at("left")), query_from_json(d.at("right")), {}};
    if (!d.at("shared").is_array()) throw QueryError("drillAcross: \"shared\" must be an array of level IRIs");
    for (const auto& s : d.at("shared")) {
        if (!s.is_string()) throw QueryError("drillAcross: \"shared\" must be an array of level IRIs");
        out.shared_levels.push_back(expand_curie(s.get<std::string>(), prefixes));
    }
    return out;
}

const json& unwrap_request(const json& doc) {
    if (doc.is_object() && doc.contains("request") && doc.at("request").is_object()) return doc.at("request");
    return doc;
}

}  // namespace kgcube::olap
