#pragma once

#include <json.hpp>

#include "kgcube/schema/cube_schema.hpp"

namespace kgcube::schema {

// The document shape served at GET /schema and accepted as a declarative
// schema config.
nlohmann::json to_json(const CubeSchema& schema);
CubeSchema schema_from_json(const nlohmann::json& doc);

}  // namespace kgcube::schema
