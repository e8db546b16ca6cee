#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kgcube/etl/pipeline.hpp"
#include "kgcube/rdf/graph.hpp"
#include "kgcube/schema/cube_schema.hpp"

namespace kgcube::testing {

std::filesystem::path source_dir();
std::filesystem::path desk_dir();
std::filesystem::path catalog_dir();
// Dump written by the desk_dump ctest fixture.
std::filesystem::path desk_dump();

// Process-private directory under the build tree, removed on destruction.
struct TempDir {
    explicit TempDir(const std::string& name);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    std::filesystem::path path;
};

std::string read_text(const std::filesystem::path& path);

inline const std::string base = "http://bike-csecu.com/datasets/agri/abox/";
inline const std::string md = base + "mdProperty#";
inline const std::string attr = base + "mdAttribute#";
inline const std::string structure = base + "mdStructure#";
inline const std::string data = base + "data#";

// The desk pipeline run once per process, in memory.
struct Desk {
    rdf::Graph graph;
    schema::CubeSchema schema;
    etl::PhaseReport report;
};
const Desk& desk();

// Pipeline config of the desk fixture writing into `out_dir` (nothing when empty).
etl::PipelineConfig desk_config(const std::filesystem::path& out_dir);

// A random schema that passes validate_tbox.
schema::CubeSchema random_schema(std::mt19937& rng);

// Synthetic production cuboid over the desk levels with about `rows`
// observations, plus the level tables the oracle walks independently.
struct OracleFixture {
    struct Row {
        std::string product, district, year;
        std::optional<double> area, production;
    };
    std::vector<Row> rows;
    // level local name -> member key -> attribute local name -> value
    std::map<std::string, std::map<std::string, std::map<std::string, std::string>>> levels;
    rdf::Graph graph;
    schema::CubeSchema schema;
};
const OracleFixture& oracle_fixture();

}  // namespace kgcube::testing
