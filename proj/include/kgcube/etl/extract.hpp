#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kgcube/mapping/expression.hpp"
#include "kgcube/mapping/source_tbox.hpp"

namespace kgcube::etl {

// Unpivots wide year-blocked columns into one row per group, e.g.
// "2017-18 Area (acre)", "2017-18 Production (MT)" -> yearName=2017-18, area, production.
struct MeltGroup {
    std::string key;
    std::vector<std::pair<std::string, std::string>> columns;  // (target column, source column)
};

struct MeltSpec {
    std::vector<std::string> keep;
    std::string key_column;
    std::vector<MeltGroup> groups;
};

struct Substitution {
    std::string column;
    std::string into;  // defaults to `column` (in place)
    std::map<std::string, std::string> table;
    std::optional<std::string> fallback;  // missing key without fallback is an error
};

// Applied in order: trim, drop rows, melt, rename, substitutions, constants.
struct CleansingSpec {
    bool trim = true;
    std::optional<mapping::Expression> drop_rows;
    std::optional<MeltSpec> melt;
    std::vector<std::pair<std::string, std::string>> rename;  // (from, to)
    std::vector<Substitution> substitutions;
    std::vector<std::pair<std::string, std::string>> constants;  // (column, value)
};

// Relative lookup-table files ("file": "x.csv", two columns key,value) resolve against `base_dir`.
CleansingSpec cleansing_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);

mapping::TabularDataset cleanse(std::string name, mapping::CsvTable csv, const CleansingSpec& spec);

// Table name defaults to the file stem. Throws CsvError for I/O failures, ragged
// rows and unmatched substitutions.
mapping::TabularDataset extract_csv(const std::filesystem::path& path, const CleansingSpec& spec, std::string name = {});

}  // namespace kgcube::etl
