#include "kgcube/etl/links.hpp"

#include "kgcube/mapping/csv.hpp"
#include "kgcube/rdf/vocab.hpp"

namespace kgcube::etl {

namespace {

LinkSet from_table(const mapping::CsvTable& t, const std::string& where) {
    if (t.header.size() != 2) throw CsvError(where + ": link file needs exactly two columns (localIri, externalIri)");
    LinkSet links;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const auto& r = t.rows[i];
        if (r[0].empty() || r[1].empty()) throw CsvError(where + ": data row " + std::to_string(i + 1) + ": empty IRI");
        links.entries.push_back({r[0], r[1]});
    }
    return links;
}

}  // namespace

LinkSet parse_links(std::string_view csv_text) { return from_table(mapping::parse_csv(csv_text), "links"); }

LinkSet read_links(const std::filesystem::path& path) { return from_table(mapping::read_csv_file(path), path.string()); }

std::size_t apply_links(rdf::Graph& graph, const LinkSet& links, bool strict) {
    const auto same_as = rdf::iri(vocab::owl::same_as);
    if (strict) {
        for (const auto& l : links.entries) {
            auto local = rdf::iri(l.local);
            if (graph.find(local, std::nullopt, std::nullopt).empty()) {
                throw EtlError("External Linking", "link source " + l.local + " is not in the graph");
            }
        }
    }
    std::size_t added = 0;
    for (const auto& l : links.entries) {
        if (graph.insert(rdf::iri(l.local), same_as, rdf::iri(l.external))) ++added;
    }
    return added;
}

}  // namespace kgcube::etl
