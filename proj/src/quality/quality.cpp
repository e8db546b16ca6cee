#include "kgcube/quality/quality.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "kgcube/error.hpp"
#include "kgcube/rdf/term.hpp"
#include "kgcube/rdf/vocab.hpp"

namespace kgcube::quality {

using nlohmann::json;
using rdf::Graph;

namespace {

std::vector<Graph::TermId> members_of(const Graph& g, std::string_view level) {
    std::vector<Graph::TermId> out;
    auto member_of = g.lookup(rdf::iri(vocab::qb4o::member_of));
    auto lv = g.lookup(rdf::iri(level));
    if (!member_of || !lv) return out;
    g.scan(std::nullopt, member_of, lv, [&](const Graph::Key& k) { out.push_back(k[0]); });
    return out;
}

std::size_t count(const Graph& g, std::optional<Graph::TermId> s, std::optional<Graph::TermId> p) {
    std::size_t n = 0;
    g.scan(s, p, std::nullopt, [&](const Graph::Key&) { ++n; });
    return n;
}

}  // namespace

std::int64_t completeness_hundredths(std::size_t total, std::size_t incomplete) {
    if (total == 0) throw MetricError("completeness is undefined for zero items");
    if (incomplete > total) throw MetricError("incomplete items exceed total items");
    auto complete = static_cast<std::int64_t>(total - incomplete);
    auto t = static_cast<std::int64_t>(total);
    // round(10000 * complete / total), halves up
    return (20000 * complete + t) / (2 * t);
}

std::string CompletenessReport::percent_text() const {
    std::string frac = std::to_string(hundredths % 100);
    if (frac.size() < 2) frac.insert(0, "0");
    return std::to_string(hundredths / 100) + "." + frac;
}

CompletenessReport property_completeness(const Graph& graph, std::string_view level, std::string_view attribute) {
    CompletenessReport r{std::string(level), std::string(attribute), 0, 0, 0};
    auto members = members_of(graph, level);
    if (members.empty()) throw MetricError("level " + std::string(level) + " has no members");
    auto attr = graph.lookup(rdf::iri(attribute));
    r.total = members.size();
    for (auto m : members) {
        if (!attr || count(graph, m, attr) == 0) ++r.incomplete;
    }
    r.hundredths = completeness_hundredths(r.total, r.incomplete);
    return r;
}

std::vector<CompletenessReport> completeness_all(const Graph& graph, const schema::CubeSchema& schema) {
    std::vector<CompletenessReport> out;
    for (const auto& [iri, level] : schema.levels) {
        if (members_of(graph, iri).empty()) continue;
        for (const auto& a : level.attributes) out.push_back(property_completeness(graph, iri, a.iri));
    }
    return out;
}

std::vector<LevelStats> level_stats(const Graph& graph, const schema::CubeSchema& schema) {
    std::vector<LevelStats> out;
    auto same_as = graph.lookup(rdf::iri(vocab::owl::same_as));
    for (const auto& [iri, level] : schema.levels) {
        LevelStats s{iri, level.attributes.size(), 0, 0, 0};
        auto members = members_of(graph, iri);
        s.members = members.size();
        for (auto m : members) {
            if (same_as) s.links += count(graph, m, same_as);
            s.triples += count(graph, m, std::nullopt);
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<CuboidStats> cuboid_stats(const Graph& graph, const schema::CubeSchema& schema) {
    std::vector<CuboidStats> out;
    auto type = graph.lookup(rdf::iri(vocab::rdf::type));
    auto obs = graph.lookup(rdf::iri(vocab::qb::observation));
    auto data_set = graph.lookup(rdf::iri(vocab::qb::data_set));
    for (const auto& [iri, ds] : schema.datasets) {
        CuboidStats s{iri, ds.structure, 0, 0};
        auto d = graph.lookup(rdf::iri(iri));
        if (type && obs && data_set && d) {
            std::set<Graph::TermId> subjects;
            graph.scan(std::nullopt, data_set, d, [&](const Graph::Key& k) { subjects.insert(k[0]); });
            for (auto o : subjects) {
                bool typed = false;
                graph.scan(o, type, obs, [&](const Graph::Key&) { typed = true; });
                if (!typed) continue;
                ++s.observations;
                s.triples += count(graph, o, std::nullopt);
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

json to_json(const std::vector<LevelStats>& levels) {
    json out = json::array();
    for (const auto& s : levels) {
        out.push_back({{"level", s.level}, {"attributes", s.attributes}, {"members", s.members}, {"links", s.links},
                       {"triples", s.triples}});
    }
    return out;
}

json to_json(const std::vector<CuboidStats>& cuboids) {
    json out = json::array();
    for (const auto& s : cuboids) {
        out.push_back({{"dataset", s.dataset}, {"structure", s.structure}, {"observations", s.observations}, {"triples", s.triples}});
    }
    return out;
}

json to_json(const std::vector<CompletenessReport>& reports) {
    json out = json::array();
    for (const auto& r : reports) {
        out.push_back({{"level", r.level}, {"attribute", r.attribute}, {"total", r.total}, {"incomplete", r.incomplete},
                       {"percent", r.percent()}});
    }
    return out;
}

std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    std::vector<bool> numeric(header.size(), !rows.empty());
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) {
            width[i] = std::max(width[i], r[i].size());
            bool num = !r[i].empty() && std::all_of(r[i].begin(), r[i].end(), [](unsigned char c) {
                return std::isdigit(c) || c == '.' || c == '-';
            });
            numeric[i] = numeric[i] && num;
        }
    }
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& cells) {
        std::string text;
        for (std::size_t i = 0; i < width.size(); ++i) {
            std::string c = i < cells.size() ? cells[i] : "";
            std::string pad(width[i] - c.size(), ' ');
            if (i) text += "  ";
            text += numeric[i] ? pad + c : c + pad;
        }
        while (!text.empty() && text.back() == ' ') text.pop_back();
        out << text << "\n";
    };
    line(header);
    std::vector<std::string> rule;
    for (auto w : width) rule.emplace_back(w, '-');
    line(rule);
    for (const auto& r : rows) line(r);
    return out.str();
}

std::string render_level_stats(const std::vector<LevelStats>& levels) {
    std::vector<std::vector<std::string>> rows;
    LevelStats total{"Total", 0, 0, 0, 0};
    for (const auto& s : levels) {
        rows.push_back({rdf::local_name(s.level), std::to_string(s.attributes), std::to_string(s.members),
                        std::to_string(s.links), std::to_string(s.triples)});
        total.members += s.members;
        total.links += s.links;
        total.triples += s.triples;
    }
    rows.push_back({"Total " + std::to_string(levels.size()), "", std::to_string(total.members), std::to_string(total.links),
                    std::to_string(total.triples)});
    return render_table({"level", "attributes", "members", "links", "triples"}, rows);
}

std::string render_cuboid_stats(const std::vector<CuboidStats>& cuboids) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : cuboids) {
        rows.push_back({rdf::local_name(s.dataset), std::to_string(s.observations), std::to_string(s.triples)});
    }
    return render_table({"dataset", "observations", "triples"}, rows);
}

std::string render_completeness(const std::vector<CompletenessReport>& reports) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : reports) {
        rows.push_back({rdf::local_name(r.level), rdf::local_name(r.attribute), std::to_string(r.total),
                        std::to_string(r.incomplete), r.percent_text()});
    }
    return render_table({"level", "attribute", "items", "incomplete", "percent"}, rows);
}

}  // namespace kgcube::quality
