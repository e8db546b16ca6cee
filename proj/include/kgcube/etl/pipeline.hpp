#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kgcube/etl/extract.hpp"
#include "kgcube/rdf/graph.hpp"

namespace kgcube::etl {

inline constexpr std::array<std::string_view, 7> phase_names = {
    "Extraction",         "Target TBox Generation", "Source TBox Generation", "Mapping Generation",
    "ABox Generation",    "External Linking",       "Load",
};

struct SourceConfig {
    std::string name;  // table name; the source class is source namespace + name
    std::filesystem::path path;
    CleansingSpec cleansing;
    std::string dataset;  // for cuboid sources sharing a structure; optional
};

struct PipelineConfig {
    std::string base_iri = "http://bike-csecu.com/datasets/agri/abox/";
    std::string source_ns = "http://bike-csecu.com/datasets/agri/onto#";
    std::string map_ns = "http://bike-csecu.com/map#";
    std::filesystem::path tbox;
    std::filesystem::path mapping;
    std::vector<SourceConfig> sources;
    std::vector<std::filesystem::path> links;
    std::filesystem::path output;
    std::filesystem::path staging;
    // Strict runs reject unknown link sources, dangling roll-ups and dangling level references.
    bool strict = true;
};

// Paths in the document are resolved against `base_dir`.
PipelineConfig pipeline_config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

struct PhaseStat {
    std::string name;
    double elapsed_ms = 0;
    std::size_t records = 0;
    bool completed = false;
};

struct PhaseReport {
    std::vector<PhaseStat> phases;
    std::size_t triples = 0;
    std::vector<std::string> warnings;
    std::string output;

    nlohmann::json to_json() const;
};

struct PipelineResult {
    rdf::Graph graph;
    PhaseReport report;
};

// Runs the seven phases in order. A failing phase throws EtlError naming it;
// whatever reached the staging directory stays there, including report.json.
PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace kgcube::etl
