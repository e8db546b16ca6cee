#include <gtest/gtest.h>

#include <regex>

#include "kgcube/error.hpp"
#include "kgcube/olap/plan.hpp"
#include "kgcube/olap/query_json.hpp"
#include "kgcube/olap/sparql.hpp"
#include "kgcube/rdf/vocab.hpp"
#include "support/fixture.hpp"

using namespace kgcube;
using namespace kgcube::olap;
namespace t = kgcube::testing;

namespace {

OlapQuery catalog_query(const std::string& id) {
    auto doc = nlohmann::json::parse(t::read_text(t::catalog_dir() / (id + ".json")));
    return query_from_json(doc["request"]);
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + needle.size())) ++n;
    return n;
}

std::string listing_sparql() { return emit_sparql(compile(catalog_query("q00-category-division-year"), t::desk().schema)); }

}  // namespace

TEST(Sparql, ListingScenarioShape) {
    auto s = listing_sparql();
    EXPECT_NE(s.find("?o a qb:Observation ."), std::string::npos);
    EXPECT_NE(s.find("?o qb:dataSet <" + t::data + "agricultureDataset> ."), std::string::npos);
    EXPECT_NE(s.find("<" + t::attr + "inCategory>"), std::string::npos);
    EXPECT_NE(s.find("<" + t::attr + "inDivision>"), std::string::npos);
    EXPECT_EQ(count(s, "qb4o:memberOf"), 5u);
    EXPECT_NE(s.find("SELECT ?agriProductDim_categoryName ?agriGeographyDim_divisionName ?agriTimeDim_yearName "
                     "(AVG(<http://www.w3.org/2001/XMLSchema#float>(?m1)) as ?area_avg)"),
              std::string::npos);
    EXPECT_NE(s.find("(AVG(<http://www.w3.org/2001/XMLSchema#float>(?m2)) as ?production_avg)"), std::string::npos);
    EXPECT_NE(s.find("FILTER ((REGEX (?Category_categoryName, \"Cereals\", \"i\") || "
                     "REGEX (?Category_categoryName, \"Fiber Crops\", \"i\")) && REGEX (?Time_yearName, \"2018-19\", \"i\"))"),
              std::string::npos);
    EXPECT_EQ(count(s, "REGEX ("), 3u);
    const std::string keys = "?agriProductDim_categoryName ?agriGeographyDim_divisionName ?agriTimeDim_yearName";
    EXPECT_NE(s.find("GROUP BY " + keys + "\n"), std::string::npos);
    EXPECT_NE(s.find("ORDER BY " + keys), std::string::npos);
    EXPECT_LT(s.find("WHERE {"), s.find("FILTER"));
    EXPECT_LT(s.find("FILTER"), s.find("GROUP BY"));
}

TEST(Sparql, EmissionIsByteDeterministic) {
    EXPECT_EQ(listing_sparql(), listing_sparql());
    for (const auto& id : {"q01-rollup-category-division", "q08-slice-onion-chandpur"}) {
        auto q = catalog_query(id);
        EXPECT_EQ(emit_sparql(compile(q, t::desk().schema)), emit_sparql(compile(q, t::desk().schema)));
    }
}

TEST(Sparql, LeavesRenderByKind) {
    OlapQuery q = catalog_query("q00-category-division-year");
    q.filter = Filter::all({Filter::measure_test(t::md + "production", Comparator::Ge, "100"),
                            Filter::attribute_test(t::md + "Time", t::attr + "startYear", Comparator::Lt, "2019"),
                            Filter::attribute_test(t::md + "Division", t::attr + "divisionName", Comparator::Ne, "Dha\"ka")});
    auto s = emit_sparql(compile(q, t::desk().schema));
    EXPECT_NE(s.find("<http://www.w3.org/2001/XMLSchema#double>(?m2) >= 100"), std::string::npos) << s;
    EXPECT_NE(s.find("<http://www.w3.org/2001/XMLSchema#double>(?Time_startYear) < 2019"), std::string::npos) << s;
    EXPECT_NE(s.find("STR(?Division_divisionName) != \"Dha\\\"ka\""), std::string::npos) << s;

    q.aggregates = {{t::md + "area", AggregateFunction::Count}};
    q.filter.reset();
    s = emit_sparql(compile(q, t::desk().schema));
    EXPECT_NE(s.find("(COUNT(?m1) as ?area_count)"), std::string::npos);
    EXPECT_EQ(s.find("FILTER"), std::string::npos);
}

TEST(Sparql, RegexValuesAreLiteral) {
    EXPECT_EQ(escape_regex("a.b*(c)"), "a\\.b\\*\\(c\\)");
    EXPECT_EQ(escape_regex("2018-19"), "2018-19");
    OlapQuery q = catalog_query("q00-category-division-year");
    q.filter = Filter::all({Filter::attribute_test(t::md + "Category", t::attr + "categoryName", Comparator::Regex, "a+b")});
    auto s = emit_sparql(compile(q, t::desk().schema));
    EXPECT_NE(s.find("REGEX (?Category_categoryName, \"a\\\\+b\", \"i\")"), std::string::npos) << s;
}

TEST(Federated, ServiceBlockJoinsThroughSameAs) {
    const auto& s = t::desk().schema;
    OlapQuery q = catalog_query("q00-category-division-year");
    q.filter.reset();
    q.group_by = {{t::md + "agriGeographyDim", t::md + "District", t::attr + "districtName"}};
    FederatedSpec spec{"http://127.0.0.1:8891/sparql", t::md + "District",
                       "?entity <http://mock.example/population> ?population . ?entity <http://mock.example/label> \"x?y\" ."};
    auto text = emit_federated_sparql(q, s, spec, &t::desk().graph);
    EXPECT_EQ(text.rfind("# WARNING", 0), std::string::npos);
    EXPECT_NE(text.find("PREFIX owl: <http://www.w3.org/2002/07/owl#>"), std::string::npos);
    EXPECT_NE(text.find("?agriGeographyDim_District owl:sameAs ?entity ."), std::string::npos);
    EXPECT_NE(text.find("SERVICE <http://127.0.0.1:8891/sparql> {"), std::string::npos);
    EXPECT_NE(text.find("?population"), std::string::npos);
    EXPECT_NE(text.find("GROUP BY ?agriGeographyDim_districtName ?population"), std::string::npos) << text;
    EXPECT_EQ(pattern_variables(spec.pattern), (std::vector<std::string>{"entity", "population"}));
    EXPECT_EQ(pattern_variables("<http://a?b> ?x # ?y\n'?z' $w"), (std::vector<std::string>{"x", "w"}));
    EXPECT_EQ(text, emit_federated_sparql(q, s, spec, &t::desk().graph));
}

TEST(Federated, JoinLevelAboveTheGroupIsAdded) {
    OlapQuery q = catalog_query("q00-category-division-year");
    q.filter.reset();
    FederatedSpec spec{"http://127.0.0.1:8892/sparql", t::md + "Product", "?entity <http://mock.example/co2> ?co2 ."};
    auto text = emit_federated_sparql(q, t::desk().schema, spec, &t::desk().graph);
    EXPECT_NE(text.find("?agriProductDim_Product owl:sameAs ?entity ."), std::string::npos) << text;
}

TEST(Federated, WarnsAndRejects) {
    const auto& s = t::desk().schema;
    OlapQuery q;
    q.dataset = t::data + "fisheriesDataset";
    q.group_by = {{t::md + "agriProductDim", t::md + "Habitat", t::attr + "habitatName"}};
    q.aggregates = {{t::md + "production", AggregateFunction::Sum}};
    FederatedSpec spec{"http://127.0.0.1:8891/sparql", t::md + "Habitat", "?entity ?p ?v ."};
    rdf::Graph unlinked;
    for (const auto& tr : t::desk().graph.triples()) {
        if (tr.predicate.value() != vocab::owl::same_as) unlinked.insert(tr);
    }
    EXPECT_EQ(emit_federated_sparql(q, s, spec, &unlinked).rfind("# WARNING", 0), 0u);
    EXPECT_EQ(emit_federated_sparql(q, s, spec, &t::desk().graph).rfind("# WARNING", 0), std::string::npos);
    EXPECT_FALSE(level_has_links(unlinked, t::md + "Habitat"));
    EXPECT_TRUE(level_has_links(t::desk().graph, t::md + "Habitat"));
    EXPECT_EQ(emit_federated_sparql(q, s, spec).rfind("# WARNING", 0), std::string::npos);

    auto bad = spec;
    bad.pattern = "  \n";
    EXPECT_THROW(emit_federated_sparql(q, s, bad), QueryError);
    bad = spec;
    bad.endpoint = "wikidata";
    EXPECT_THROW(emit_federated_sparql(q, s, bad), QueryError);
    bad = spec;
    bad.pattern = "?x ?p ?v .";
    EXPECT_THROW(emit_federated_sparql(q, s, bad), QueryError);
    bad = spec;
    bad.join_level = t::md + "Nowhere";
    EXPECT_THROW(emit_federated_sparql(q, s, bad), QueryError);
    bad = spec;
    bad.join_level = t::md + "Product";
    EXPECT_THROW(emit_federated_sparql(q, s, bad), QueryError);
}
