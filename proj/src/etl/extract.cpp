#include "kgcube/etl/extract.hpp"

#include <algorithm>
#include <set>

#include "kgcube/mapping/csv.hpp"

namespace kgcube::etl {

using nlohmann::json;

namespace {

std::string trimmed(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::size_t column_index(const std::vector<std::string>& header, const std::string& name, const std::string& what) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw CsvError(what + ": no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
}

std::string get_string(const json& obj, const char* key) {
    if (!obj.contains(key) || !obj.at(key).is_string()) throw EtlError("Extraction", std::string("cleansing: '") + key + "' must be a string");
    return obj.at(key).get<std::string>();
}

std::vector<std::pair<std::string, std::string>> string_pairs(const json& obj, const char* what) {
    if (!obj.is_object()) throw EtlError("Extraction", std::string("cleansing: '") + what + "' must be an object");
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [k, v] : obj.items()) {
        if (!v.is_string()) throw EtlError("Extraction", std::string("cleansing: values of '") + what + "' must be strings");
        out.emplace_back(k, v.get<std::string>());
    }
    return out;
}

}  // namespace

CleansingSpec cleansing_from_json(const json& doc, const std::filesystem::path& base_dir) {
    CleansingSpec spec;
    if (doc.is_null()) return spec;
    if (!doc.is_object()) throw EtlError("Extraction", "cleansing spec must be an object");
    if (doc.contains("trim")) spec.trim = doc.at("trim").get<bool>();
    if (doc.contains("dropRows")) spec.drop_rows = mapping::Expression::parse(get_string(doc, "dropRows"));
    if (doc.contains("melt")) {
        const auto& m = doc.at("melt");
        MeltSpec melt;
        melt.keep = m.value("keep", std::vector<std::string>{});
        melt.key_column = get_string(m, "keyColumn");
        for (const auto& g : m.at("groups")) {
            MeltGroup group;
            group.key = get_string(g, "key");
            group.columns = string_pairs(g.at("columns"), "columns");
            melt.groups.push_back(std::move(group));
        }
        spec.melt = std::move(melt);
    }
    if (doc.contains("rename")) spec.rename = string_pairs(doc.at("rename"), "rename");
    for (const auto& s : doc.value("substitutions", json::array())) {
        Substitution sub;
        sub.column = get_string(s, "column");
        sub.into = s.contains("into") ? get_string(s, "into") : sub.column;
        if (s.contains("map")) {
            for (const auto& [k, v] : string_pairs(s.at("map"), "map")) sub.table[k] = v;
        }
        if (s.contains("file")) {
            auto path = base_dir / get_string(s, "file");
            auto table = mapping::read_csv_file(path);
            if (table.header.size() != 2) throw CsvError(path.string() + ": lookup table needs exactly two columns");
            for (const auto& r : table.rows) sub.table[trimmed(r[0])] = trimmed(r[1]);
        }
        if (s.contains("default")) sub.fallback = get_string(s, "default");
        spec.substitutions.push_back(std::move(sub));
    }
    if (doc.contains("constants")) spec.constants = string_pairs(doc.at("constants"), "constants");
    return spec;
}

mapping::TabularDataset cleanse(std::string name, mapping::CsvTable csv, const CleansingSpec& spec) {
    auto& header = csv.header;
    auto& rows = csv.rows;
    if (spec.trim) {
        for (auto& h : header) h = trimmed(h);
        for (auto& r : rows) {
            for (auto& c : r) c = trimmed(c);
        }
    }
    {
        std::set<std::string> seen;
        for (const auto& h : header) {
            if (!seen.insert(h).second) throw CsvError(name + ": duplicate column '" + h + "'");
        }
    }

    if (spec.drop_rows) {
        std::vector<std::vector<std::string>> kept;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            bool drop = false;
            try {
                drop = spec.drop_rows->test(mapping::RowView(header, rows[i]));
            } catch (const ExpressionError& e) {
                throw CsvError(name + ": data row " + std::to_string(i + 1) + ": " + e.what());
            }
            if (!drop) kept.push_back(std::move(rows[i]));
        }
        rows = std::move(kept);
    }

    if (spec.melt) {
        const auto& m = *spec.melt;
        std::vector<std::string> out_header = m.keep;
        out_header.push_back(m.key_column);
        std::vector<std::string> targets;
        for (const auto& g : m.groups) {
            for (const auto& [t, s] : g.columns) {
                if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
            }
        }
        out_header.insert(out_header.end(), targets.begin(), targets.end());
        std::vector<std::size_t> keep_idx;
        for (const auto& k : m.keep) keep_idx.push_back(column_index(header, k, name));
        std::vector<std::vector<std::string>> out_rows;
        for (const auto& r : rows) {
            for (const auto& g : m.groups) {
                std::vector<std::string> row;
                for (auto i : keep_idx) row.push_back(r[i]);
                row.push_back(g.key);
                for (const auto& t : targets) {
                    std::string cell;
                    for (const auto& [tc, sc] : g.columns) {
                        if (tc == t) cell = r[column_index(header, sc, name)];
                    }
                    row.push_back(cell);
                }
                out_rows.push_back(std::move(row));
            }
        }
        header = std::move(out_header);
        rows = std::move(out_rows);
    }

    for (const auto& [from, to] : spec.rename) header[column_index(header, from, name)] = to;

    for (const auto& sub : spec.substitutions) {
        std::size_t src = column_index(header, sub.column, name);
        std::size_t dst;
        auto it = std::find(header.begin(), header.end(), sub.into);
        if (it == header.end()) {
            header.push_back(sub.into);
            for (auto& r : rows) r.emplace_back();
            dst = header.size() - 1;
        } else {
            dst = static_cast<std::size_t>(it - header.begin());
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            auto& r = rows[i];
            auto hit = sub.table.find(r[src]);
            if (hit != sub.table.end()) {
                r[dst] = hit->second;
            } else if (sub.fallback) {
                r[dst] = *sub.fallback;
            } else {
                throw CsvError(name + ": data row " + std::to_string(i + 1) + ": no substitution for '" + r[src] +
                               "' in column " + sub.column);
            }
        }
    }

    for (const auto& [col, value] : spec.constants) {
        auto it = std::find(header.begin(), header.end(), col);
        if (it == header.end()) {
            header.push_back(col);
            for (auto& r : rows) r.push_back(value);
        } else {
            auto idx = static_cast<std::size_t>(it - header.begin());
            for (auto& r : rows) r[idx] = value;
        }
    }

    return mapping::make_dataset(std::move(name), std::move(csv));
}

mapping::TabularDataset extract_csv(const std::filesystem::path& path, const CleansingSpec& spec, std::string name) {
    if (name.empty()) name = path.stem().string();
    return cleanse(std::move(name), mapping::read_csv_file(path), spec);
}

}  // namespace kgcube::etl
