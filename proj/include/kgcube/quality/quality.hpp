#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgcube/rdf/graph.hpp"
#include "kgcube/schema/cube_schema.hpp"

namespace kgcube::quality {

struct CompletenessReport {
    std::string level;
    std::string attribute;
    std::size_t total = 0;
    std::size_t incomplete = 0;
    std::int64_t hundredths = 0;  // percent x 100, rounded half-up

    double percent() const { return static_cast<double>(hundredths) / 100.0; }
    std::string percent_text() const;  // "93.97"
};

// Percent of complete items, in hundredths, rounded half-up. MetricError when total is 0.
std::int64_t completeness_hundredths(std::size_t total, std::size_t incomplete);

// Items are the members of `level`; an item is incomplete when it has no
// triple for `attribute`. MetricError when the level has no members.
CompletenessReport property_completeness(const rdf::Graph& graph, std::string_view level, std::string_view attribute);

// One report per (level, attribute) of the schema, skipping member-less levels.
std::vector<CompletenessReport> completeness_all(const rdf::Graph& graph, const schema::CubeSchema& schema);

struct LevelStats {
    std::string level;
    std::size_t attributes = 0;
    std::size_t members = 0;
    std::size_t links = 0;    // owl:sameAs triples of members
    std::size_t triples = 0;  // all triples whose subject is a member
};

// members x (attributes + 2) + links: type, memberOf, one triple per attribute, links.
constexpr std::size_t expected_level_triples(std::size_t members, std::size_t attributes, std::size_t links) {
    return members * (attributes + 2) + links;
}

std::vector<LevelStats> level_stats(const rdf::Graph& graph, const schema::CubeSchema& schema);

struct CuboidStats {
    std::string dataset;
    std::string structure;
    std::size_t observations = 0;
    std::size_t triples = 0;
};

std::vector<CuboidStats> cuboid_stats(const rdf::Graph& graph, const schema::CubeSchema& schema);

nlohmann::json to_json(const std::vector<LevelStats>& levels);
nlohmann::json to_json(const std::vector<CuboidStats>& cuboids);
nlohmann::json to_json(const std::vector<CompletenessReport>& reports);

// Aligned plain-text table; numeric-looking cells are right-aligned.
std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);
std::string render_level_stats(const std::vector<LevelStats>& levels);
std::string render_cuboid_stats(const std::vector<CuboidStats>& cuboids);
std::string render_completeness(const std::vector<CompletenessReport>& reports);

}  // namespace kgcube::quality
