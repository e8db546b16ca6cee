#pragma once

#include <filesystem>

#include <json.hpp>

#include "kgcube/olap/query.hpp"

namespace kgcube::olap {

// JSON form:
//   {"dataset": iri, "prefixes": {label: ns},
//    "groupBy": [{"dimension", "level", "attribute"}],
//    "aggregates": [{"measure", "function"}],
//    "filter": {"and": [...]} | {"or": [...]} | {"level", "attribute", "op", "value"} | {"measure", "op", "value"},
//    "orderBy": [column]}
// IRIs may be written as label:local when the label is in "prefixes".
// Malformed documents raise QueryError; schema checks are left to validate_query.
OlapQuery query_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const OlapQuery& q);

Filter filter_from_json(const nlohmann::json& doc, const std::map<std::string, std::string>& prefixes = {});
nlohmann::json to_json(const Filter& f);

OlapQuery load_query_file(const std::filesystem::path& path);

// {"drillAcross": {"left": query, "right": query, "shared": [level iri], "prefixes": {...}}}
struct DrillAcrossQuery {
    OlapQuery left;
    OlapQuery right;
    std::vector<std::string> shared_levels;
};

bool is_drill_across(const nlohmann::json& doc);
DrillAcrossQuery drill_across_from_json(const nlohmann::json& doc);

// Catalog entries wrap the request in {"request": ...}; plain requests pass through.
const nlohmann::json& unwrap_request(const nlohmann::json& doc);

std::string expand_curie(const std::string& text, const std::map<std::string, std::string>& prefixes);

}  // namespace kgcube::olap
