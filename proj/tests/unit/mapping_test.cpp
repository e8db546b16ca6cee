#include <gtest/gtest.h>

#include "kgcube/error.hpp"
#include "kgcube/mapping/csv.hpp"
#include "kgcube/mapping/expression.hpp"
#include "kgcube/mapping/mapping_set.hpp"
#include "kgcube/mapping/source_tbox.hpp"
#include "kgcube/rdf/turtle.hpp"
#include "kgcube/schema/tbox.hpp"
#include "support/fixture.hpp"

using namespace kgcube;
using namespace kgcube::mapping;
namespace t = kgcube::testing;

namespace {

Value eval(const std::string& expr, const std::vector<std::string>& cols, const std::vector<std::string>& cells) {
    return Expression::parse(expr).evaluate(RowView(cols, cells));
}

const std::string ns(default_source_ns);

}  // namespace

TEST(Csv, QuotesCrlfAndBom) {
    auto t = parse_csv("\xEF\xBB\xBF" "a,b\r\n\"x, y\",\"say \"\"hi\"\"\"\r\n\r\n1,\n");
    EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b"}));
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[0][0], "x, y");
    EXPECT_EQ(t.rows[0][1], "say \"hi\"");
    EXPECT_EQ(t.rows[1][1], "");
}

TEST(Csv, RaggedRowsNameTheLine) {
    try {
        parse_csv("a,b\n1,2\n3\n");
        FAIL();
    } catch (const CsvError& e) {
        EXPECT_NE(std::string(e.what()).find("3"), std::string::npos);
    }
    EXPECT_THROW(parse_csv(""), CsvError);
}

TEST(Csv, WriteThenReadIsIdentity) {
    std::vector<std::string> h{"k", "v"};
    std::vector<std::vector<std::string>> rows{{"a,b", "q\"uote"}, {"line\nbreak", ""}};
    auto back = parse_csv(write_csv(h, rows));
    EXPECT_EQ(back.header, h);
    EXPECT_EQ(back.rows, rows);
}

TEST(Expression, ArithmeticConcatAndComparisons) {
    std::vector<std::string> cols{"a", "b", "name"};
    std::vector<std::string> cells{"6", "1.5", "Barishal Division"};
    EXPECT_EQ(eval("a * b + 1", cols, cells).str(), "10");
    EXPECT_EQ(eval("a / 4", cols, cells).str(), "1.5");
    EXPECT_EQ(eval("concat(\"A\", a, \"-\", name)", cols, cells).str(), "A6-Barishal Division");
    EXPECT_TRUE(eval("a > b and not (a = 7)", cols, cells).as_bool());
    EXPECT_TRUE(eval("contains(name, 'Division') || false", cols, cells).as_bool());
    EXPECT_TRUE(eval("a = \"6.0\"", cols, cells).as_bool());
    EXPECT_EQ(eval("substitute(name, {\"Barishal Division\": \"10\"}, \"0\")", cols, cells).str(), "10");
    EXPECT_EQ(eval("substitute(a, {\"x\": \"y\"}, \"none\")", cols, cells).str(), "none");
}

TEST(Expression, ColumnsAndErrors) {
    auto e = Expression::parse("concat(cropsId, districtId, yearId)");
    EXPECT_EQ(e.columns(), (std::vector<std::string>{"cropsId", "districtId", "yearId"}));
    EXPECT_FALSE(e.is_column());
    EXPECT_TRUE(Expression::parse("districtId").is_column());
    EXPECT_THROW(Expression::parse("concat(a,"), ExpressionError);
    EXPECT_THROW(Expression::parse("a +* b"), ExpressionError);
    EXPECT_THROW(eval("missing", {"a"}, {"1"}), ExpressionError);
    EXPECT_THROW(eval("a * 2", {"a"}, {"x"}), ExpressionError);
    EXPECT_THROW(Expression::parse("a + 1").test(RowView(std::vector<std::string>{"a"}, std::vector<std::string>{"1"})),
                 ExpressionError);
}

TEST(Numbers, StrictParse) {
    double d = 0;
    EXPECT_TRUE(parse_number("12", d));
    EXPECT_TRUE(parse_number("-3.5", d));
    EXPECT_TRUE(parse_number("1e3", d));
    EXPECT_FALSE(parse_number(" 1", d));
    EXPECT_FALSE(parse_number("1,000", d));
    EXPECT_FALSE(parse_number("", d));
    EXPECT_EQ(format_number(331), "331");
    EXPECT_EQ(format_number(0.25), "0.25");
}

TEST(SourceTbox, SniffsColumnTypes) {
    auto ds = make_dataset("Habitat", parse_csv("habitatId,area,habitatName,blank\n1,2.5,Baor,\n2,3,Beel,\n"));
    ASSERT_EQ(ds.table.columns.size(), 4u);
    EXPECT_EQ(ds.table.columns[0].type, ColumnType::Integer);
    EXPECT_EQ(ds.table.columns[1].type, ColumnType::Decimal);
    EXPECT_EQ(ds.table.columns[2].type, ColumnType::Text);
    EXPECT_EQ(ds.table.columns[3].type, ColumnType::Text);
    auto tb = infer_source_tbox(ds.table);
    EXPECT_EQ(tb.class_iri, ns + "Habitat");
    ASSERT_NE(tb.by_column("area"), nullptr);
    EXPECT_EQ(tb.by_column("area")->iri, ns + "area");
    EXPECT_EQ(tb.by_column("area")->range, "http://www.w3.org/2001/XMLSchema#decimal");
    auto g = source_tbox_graph({tb});
    EXPECT_EQ(g.objects(rdf::iri(ns + "habitatId"), rdf::iri("http://www.w3.org/2000/01/rdf-schema#domain")),
              std::vector<rdf::Term>{rdf::iri(ns + "Habitat")});
    EXPECT_THROW(infer_source_tbox(describe_table("", {"a"}, {})), MappingError);
    EXPECT_THROW(infer_source_tbox(describe_table("T", {"a", "a"}, {})), MappingError);
}

namespace {

struct MappingCase {
    schema::CubeSchema target = schema::load_tbox(rdf::load_turtle_file(t::desk_dir() / "tbox.ttl"));
    std::vector<SourceTBox> sources = {
        infer_source_tbox(describe_table("Habitat", {"habitatId", "habitatName", "inSector"}, {})),
    };
    std::string prefix = R"(
@prefix map: <http://bike-csecu.com/map#> .
@prefix onto: <http://bike-csecu.com/datasets/agri/onto#> .
@prefix mdProperty: <http://bike-csecu.com/datasets/agri/abox/mdProperty#> .
@prefix mdAttribute: <http://bike-csecu.com/datasets/agri/abox/mdAttribute#> .
map:ds a map:Dataset .
map:Habitat_Habitat a map:ConceptMapping ; map:dataset map:ds ;
    map:sourceConcept onto:Habitat ; map:targetConcept mdProperty:Habitat ;
)";
    MappingSet parse(const std::string& rest) const { return parse_mappings(rdf::parse_turtle(prefix + rest), sources, target); }
};

}  // namespace

TEST(Mappings, ParsesConceptAndPropertyMappings) {
    MappingCase c;
    auto set = c.parse(R"ttl(
    map:iriValue onto:habitatId ; map:iriValueType map:SourceAttribute ; map:matchedInstances "All" .
map:p1 a map:PropertyMapping ; map:conceptMapping map:Habitat_Habitat ;
    map:targetProperty mdAttribute:habitatName ; map:sourceProperty onto:habitatName .
map:p2 a map:PropertyMapper ; map:conceptMapping map:Habitat_Habitat ;
    map:targetProperty mdAttribute:habitatId ; map:expression "concat(\"H\", habitatId)" .
)ttl");
    ASSERT_EQ(set.concepts.size(), 1u);
    const auto& cm = set.concepts[0];
    EXPECT_EQ(cm.target_kind, TargetKind::Level);
    EXPECT_EQ(cm.iri_value_type, IriValueType::SourceAttribute);
    EXPECT_FALSE(cm.matched_instances.has_value());
    ASSERT_EQ(cm.properties.size(), 2u);
    ASSERT_NE(cm.property(t::attr + "habitatId"), nullptr);
    EXPECT_FALSE(cm.property(t::attr + "habitatId")->source.is_column());
    EXPECT_EQ(set.for_source(ns + "Habitat"), &set.concepts[0]);
}

TEST(Mappings, RejectsUnresolvableReferences) {
    MappingCase c;
    EXPECT_THROW(c.parse("map:iriValue onto:nope ; map:iriValueType map:SourceAttribute .\n"), MappingError);
    EXPECT_THROW(c.parse("map:iriValue \"concat(\" ; map:iriValueType map:Expression .\n"), MappingError);
    EXPECT_THROW(c.parse("map:iriValue onto:habitatId ; map:iriValueType map:Bogus .\n"), MappingError);
    EXPECT_THROW(c.parse(R"(map:iriValue onto:habitatId .
map:p1 a map:PropertyMapping ; map:conceptMapping map:Habitat_Habitat ;
    map:targetProperty mdAttribute:districtName ; map:sourceProperty onto:habitatName .
)"),
                 MappingError);
    EXPECT_THROW(c.parse(R"(map:iriValue onto:habitatId .
map:p1 a map:PropertyMapping ; map:conceptMapping map:Habitat_Habitat ;
    map:targetProperty mdAttribute:habitatName ; map:sourceProperty onto:habitatName ; map:expression "habitatName" .
)"),
                 MappingError);
}

TEST(Mappings, UnknownSourceConceptFails) {
    std::vector<SourceTBox> only_banana = {
        infer_source_tbox(describe_table("Banana", {"districtId", "yearId", "cropsId", "area", "production"}, {}))};
    EXPECT_THROW(parse_mappings(rdf::load_turtle_file(t::desk_dir() / "mapping.ttl"), only_banana,
                                schema::load_tbox(rdf::load_turtle_file(t::desk_dir() / "tbox.ttl"))),
                 MappingError);
}
