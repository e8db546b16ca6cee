#include <gtest/gtest.h>

#include "kgcube/error.hpp"
#include "kgcube/quality/quality.hpp"
#include "kgcube/rdf/term.hpp"
#include "kgcube/rdf/vocab.hpp"
#include "support/fixture.hpp"

using namespace kgcube;
using namespace kgcube::quality;
namespace t = kgcube::testing;

namespace {

// `total` members of a level, the first `incomplete` lacking the name attribute.
rdf::Graph members_graph(std::size_t total, std::size_t incomplete) {
    rdf::Graph g;
    auto level = rdf::iri(t::md + "Item");
    for (std::size_t i = 0; i < total; ++i) {
        auto m = rdf::iri(t::base + "Item/" + std::to_string(i));
        g.insert(m, rdf::iri(vocab::qb4o::member_of), level);
        g.insert(m, rdf::iri(t::attr + "itemId"), rdf::Term::literal(std::to_string(i)));
        if (i >= incomplete) g.insert(m, rdf::iri(t::attr + "itemName"), rdf::Term::literal("n" + std::to_string(i)));
    }
    return g;
}

struct Row {
    const char* level;
    std::size_t attributes, members, links, triples;
};

}  // namespace

TEST(Completeness, Extremes) {
    EXPECT_EQ(completeness_hundredths(116, 0), 10000);
    EXPECT_EQ(completeness_hundredths(116, 116), 0);
    auto full = property_completeness(members_graph(10, 0), t::md + "Item", t::attr + "itemName");
    EXPECT_EQ(full.percent_text(), "100.00");
    auto none = property_completeness(members_graph(10, 10), t::md + "Item", t::attr + "itemName");
    EXPECT_EQ(none.percent_text(), "0.00");
    EXPECT_EQ(none.incomplete, 10u);
}

TEST(Completeness, SevenOfOneHundredSixteenMissing) {
    auto r = property_completeness(members_graph(116, 7), t::md + "Item", t::attr + "itemName");
    EXPECT_EQ(r.total, 116u);
    EXPECT_EQ(r.incomplete, 7u);
    EXPECT_EQ(r.hundredths, 9397);
    EXPECT_EQ(r.percent_text(), "93.97");
    EXPECT_DOUBLE_EQ(r.percent(), 93.97);
    auto id = property_completeness(members_graph(116, 7), t::md + "Item", t::attr + "itemId");
    EXPECT_EQ(id.percent_text(), "100.00");
}

TEST(Completeness, RoundsHalfUp) {
    EXPECT_EQ(completeness_hundredths(8, 1), 8750);
    EXPECT_EQ(completeness_hundredths(1600, 1), 9994);   // 99.9375
    EXPECT_EQ(completeness_hundredths(3, 1), 6667);      // 66.666..
    EXPECT_EQ(completeness_hundredths(3, 2), 3333);      // 33.333..
    EXPECT_EQ(completeness_hundredths(20000, 1), 10000); // 99.995
    EXPECT_EQ(completeness_hundredths(20000, 3), 9999);  // 99.985
    EXPECT_EQ(completeness_hundredths(40000, 1), 10000); // 99.9975
}

TEST(Completeness, UndefinedWithoutItems) {
    EXPECT_THROW(completeness_hundredths(0, 0), MetricError);
    EXPECT_THROW(property_completeness(rdf::Graph{}, t::md + "Item", t::attr + "itemName"), MetricError);
    EXPECT_THROW(completeness_hundredths(3, 4), MetricError);
}

TEST(Completeness, DeskIsComplete) {
    auto all = completeness_all(t::desk().graph, t::desk().schema);
    EXPECT_EQ(all.size(), 33u);
    for (const auto& r : all) EXPECT_EQ(r.percent_text(), "100.00") << r.level << " " << r.attribute;
}

TEST(LevelStats, DeskMatchesTheReferenceTable) {
    const std::vector<Row> expected = {
        {"Agriculture", 6, 1, 1, 9},    {"All", 3, 1, 1, 6},         {"Category", 3, 15, 15, 90},
        {"District", 3, 64, 128, 448},  {"Division", 3, 7, 14, 49},  {"Habitat", 3, 14, 14, 84},
        {"Product", 3, 114, 134, 704},  {"Sector", 6, 4, 4, 36},     {"Time", 3, 52, 52, 312},
    };
    auto stats = level_stats(t::desk().graph, t::desk().schema);
    ASSERT_EQ(stats.size(), expected.size());
    std::size_t members = 0, links = 0, triples = 0;
    for (std::size_t i = 0; i < stats.size(); ++i) {
        const auto& s = stats[i];
        const auto& e = expected[i];
        EXPECT_EQ(s.level, t::md + e.level);
        EXPECT_EQ(s.attributes, e.attributes) << e.level;
        EXPECT_EQ(s.members, e.members) << e.level;
        EXPECT_EQ(s.links, e.links) << e.level;
        EXPECT_EQ(s.triples, e.triples) << e.level;
        EXPECT_EQ(s.triples, expected_level_triples(s.members, s.attributes, s.links)) << e.level;
        members += s.members;
        links += s.links;
        triples += s.triples;
    }
    EXPECT_EQ(members, 272u);
    EXPECT_EQ(links, 363u);
    EXPECT_EQ(triples, 1738u);
}

TEST(LevelStats, IdentityHoldsOnGeneratedGraphs) {
    for (const auto* fixture : {&t::desk().graph, &t::oracle_fixture().graph}) {
        const auto& schema = fixture == &t::desk().graph ? t::desk().schema : t::oracle_fixture().schema;
        for (const auto& s : level_stats(*fixture, schema)) {
            EXPECT_EQ(s.triples, expected_level_triples(s.members, s.attributes, s.links)) << s.level;
        }
    }
}

TEST(CuboidStats, DeskDatasets) {
    auto c = cuboid_stats(t::desk().graph, t::desk().schema);
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c[0].dataset, t::data + "agricultureDataset");
    EXPECT_EQ(c[0].observations, 822u);
    EXPECT_EQ(c[0].triples, 5754u);
    EXPECT_EQ(c[1].observations, 249u);
    EXPECT_EQ(c[1].triples, 1494u);
    EXPECT_EQ(c[2].observations, 96u);
    EXPECT_EQ(c[2].triples, 576u);
    std::size_t sum = 0;
    for (const auto& x : c) sum += x.triples;
    for (const auto& l : level_stats(t::desk().graph, t::desk().schema)) sum += l.triples;
    EXPECT_LT(sum, t::desk().graph.size());
}

TEST(Render, TablesAreAligned) {
    auto text = render_level_stats(level_stats(t::desk().graph, t::desk().schema));
    EXPECT_NE(text.find("District     3                64    128      448"), std::string::npos) << text;
    EXPECT_NE(text.find("272    363     1738"), std::string::npos);
    auto table = render_table({"a", "n"}, {{"x", "1"}, {"long", "100"}});
    EXPECT_EQ(table, "a       n\n----  ---\nx       1\nlong  100\n");
    auto j = to_json(cuboid_stats(t::desk().graph, t::desk().schema));
    EXPECT_EQ(j[0]["observations"], 822);
}
