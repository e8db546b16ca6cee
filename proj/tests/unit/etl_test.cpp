#include <fstream>

#include <gtest/gtest.h>

#include "kgcube/error.hpp"
#include "kgcube/etl/abox.hpp"
#include "kgcube/etl/extract.hpp"
#include "kgcube/etl/links.hpp"
#include "kgcube/etl/pipeline.hpp"
#include "kgcube/mapping/csv.hpp"
#include "kgcube/rdf/turtle.hpp"
#include "kgcube/rdf/vocab.hpp"
#include "kgcube/service/commands.hpp"
#include "support/fixture.hpp"

using namespace kgcube;
using namespace kgcube::etl;
namespace t = kgcube::testing;
namespace fs = std::filesystem;
using rdf::iri;
using rdf::Term;

namespace {

const SourceConfig& source(const PipelineConfig& c, const std::string& name) {
    for (const auto& s : c.sources) {
        if (s.name == name) return s;
    }
    throw std::runtime_error("no source " + name);
}

std::string cell(const mapping::TabularDataset& d, std::size_t row, const std::string& column) {
    auto names = d.table.column_names();
    auto it = std::find(names.begin(), names.end(), column);
    if (it == names.end()) throw std::runtime_error("no column " + column);
    return d.rows.at(row).at(static_cast<std::size_t>(it - names.begin()));
}

Term fl(const std::string& v) { return Term::literal(v, std::string(vocab::xsd::float_)); }

}  // namespace

TEST(Cleansing, BananaTableMeltsToEighteenRows) {
    auto c = t::desk_config({});
    const auto& s = source(c, "Banana");
    auto data = extract_csv(s.path, s.cleansing, s.name);
    ASSERT_EQ(data.rows.size(), 18u);
    EXPECT_EQ(cell(data, 0, "districtName"), "Barguna");
    EXPECT_EQ(cell(data, 0, "districtId"), "1004");
    EXPECT_EQ(cell(data, 0, "yearName"), "2017-18");
    EXPECT_EQ(cell(data, 0, "yearId"), "201718");
    EXPECT_EQ(cell(data, 0, "area"), "331");
    EXPECT_EQ(cell(data, 0, "production"), "1132");
    EXPECT_EQ(cell(data, 0, "cropsId"), "A010192");
    // Jhallokati spelling resolves through the lookup table
    EXPECT_EQ(cell(data, 9, "districtId"), "1042");
    for (std::size_t i = 0; i < data.rows.size(); ++i) EXPECT_EQ(cell(data, i, "districtName").find("Division"), std::string::npos);
}

TEST(Cleansing, MissingSubstitutionFails) {
    CleansingSpec spec;
    spec.substitutions.push_back({"name", "code", {{"a", "1"}}, std::nullopt});
    EXPECT_THROW(cleanse("T", mapping::parse_csv("name\na\nb\n"), spec), CsvError);
    spec.substitutions[0].fallback = "0";
    auto d = cleanse("T", mapping::parse_csv("name\na\nb\n"), spec);
    EXPECT_EQ(cell(d, 1, "code"), "0");
    EXPECT_EQ(cell(d, 1, "name"), "b");
}

TEST(Cleansing, TrimRenameConstants) {
    auto spec = cleansing_from_json(nlohmann::json::parse(R"({"rename": {"x": "y"}, "constants": {"k": "v"}})"), ".");
    auto d = cleanse("T", mapping::parse_csv(" x ,z\n  1 , 2\n"), spec);
    EXPECT_EQ(d.table.column_names(), (std::vector<std::string>{"y", "z", "k"}));
    EXPECT_EQ(cell(d, 0, "y"), "1");
    EXPECT_EQ(cell(d, 0, "k"), "v");
    EXPECT_THROW(cleansing_from_json(nlohmann::json::parse(R"({"dropRows": 3})"), "."), EtlError);
}

TEST(Iris, SchemeAndEncoding) {
    IriScheme s;
    EXPECT_EQ(s.member(t::md + "District", "1004"), t::base + "District/1004");
    EXPECT_EQ(s.observation("A0101921004201718"), t::base + "observation/A0101921004201718");
    EXPECT_EQ(percent_encode("Cox's Bazar/x"), "Cox%27s%20Bazar%2Fx");
    EXPECT_EQ(percent_encode("a-b_c.d~9"), "a-b_c.d~9");
}

TEST(Abox, DeskMembersAndObservations) {
    const auto& g = t::desk().graph;
    auto barguna = iri(t::base + "District/1004");
    EXPECT_EQ(g.object(barguna, iri(t::attr + "districtName")), Term::literal("Barguna", std::string(vocab::xsd::string)));
    EXPECT_EQ(g.object(barguna, iri(t::attr + "inDivision")), iri(t::base + "Division/10"));
    EXPECT_EQ(g.object(barguna, iri(std::string(vocab::qb4o::member_of))), iri(t::md + "District"));
    EXPECT_TRUE(g.contains(rdf::Triple(barguna, iri(std::string(vocab::rdf::type)),
                                       iri(std::string(vocab::qb4o::level_member)))));
    auto obs = iri(t::base + "observation/A0101921004201718");
    EXPECT_EQ(g.object(obs, iri(t::md + "area")), fl("331"));
    EXPECT_EQ(g.object(obs, iri(t::md + "production")), fl("1132"));
    EXPECT_EQ(g.object(obs, iri(t::md + "Product")), iri(t::base + "Product/A010192"));
    EXPECT_EQ(g.object(obs, iri(t::md + "Time")), iri(t::base + "Time/201718"));
    EXPECT_EQ(g.object(obs, iri(std::string(vocab::qb::data_set))), iri(t::data + "agricultureDataset"));
    EXPECT_TRUE(dangling_rollups(g, t::desk().schema).empty());
    EXPECT_TRUE(dangling_level_refs(g, t::desk().schema).empty());
}

TEST(Links, ParseAndApply) {
    auto links = parse_links("localIri,externalIri\nhttp://x/a,http://ext/a\nhttp://x/a,http://ext/b\n");
    ASSERT_EQ(links.entries.size(), 2u);
    rdf::Graph g;
    g.insert(iri("http://x/a"), iri("http://x/p"), Term::literal("1"));
    EXPECT_EQ(apply_links(g, links), 2u);
    EXPECT_EQ(apply_links(g, links), 0u);
    auto unknown = parse_links("localIri,externalIri\nhttp://x/missing,http://ext/c\n");
    EXPECT_THROW(apply_links(g, unknown, true), Error);
    EXPECT_EQ(apply_links(g, unknown, false), 1u);
    EXPECT_THROW(parse_links("a\nb\n"), Error);
}

TEST(Pipeline, SevenPhasesAndDeterministicDump) {
    t::TempDir a("etl-a"), b("etl-b");
    auto ra = run_pipeline(t::desk_config(a.path));
    auto rb = run_pipeline(t::desk_config(b.path));
    ASSERT_EQ(ra.report.phases.size(), 7u);
    for (std::size_t i = 0; i < 7; ++i) {
        EXPECT_EQ(ra.report.phases[i].name, phase_names[i]);
        EXPECT_TRUE(ra.report.phases[i].completed);
    }
    EXPECT_EQ(ra.report.phases[5].records, 363u);
    auto bytes = t::read_text(a.path / "bdakg.ttl");
    EXPECT_FALSE(bytes.empty());
    EXPECT_EQ(bytes, t::read_text(b.path / "bdakg.ttl"));
    EXPECT_EQ(bytes, rdf::serialize_turtle(t::desk().graph));
    EXPECT_TRUE(fs::exists(a.path / "staging" / "report.json"));
    EXPECT_TRUE(fs::exists(a.path / "staging" / "extracted" / "Banana.csv"));
    EXPECT_EQ(ra.report.triples, ra.graph.size());
}

TEST(Pipeline, MissingMappingFailsInMappingPhase) {
    t::TempDir dir("etl-missing");
    auto c = t::desk_config(dir.path);
    c.mapping = dir.path / "absent.ttl";
    try {
        run_pipeline(c);
        FAIL();
    } catch (const EtlError& e) {
        EXPECT_EQ(e.phase(), "Mapping Generation");
    }
    auto report = nlohmann::json::parse(t::read_text(dir.path / "staging" / "report.json"));
    EXPECT_TRUE(report["phases"][2]["completed"].get<bool>());
    EXPECT_FALSE(report["phases"][3]["completed"].get<bool>());
}

TEST(Pipeline, DanglingRollupStrictAndLenient) {
    t::TempDir dir("etl-dangling");
    auto text = t::read_text(t::desk_dir() / "levels" / "district.csv") + "9999,Atlantis,99\n";
    std::ofstream(dir.path / "district.csv") << text;
    auto c = t::desk_config({});
    for (auto& s : c.sources) {
        if (s.name == "District") s.path = dir.path / "district.csv";
    }
    try {
        run_pipeline(c);
        FAIL();
    } catch (const EtlError& e) {
        EXPECT_EQ(e.phase(), "ABox Generation");
    }
    c.strict = false;
    auto r = run_pipeline(c);
    ASSERT_FALSE(r.report.warnings.empty());
    EXPECT_NE(r.report.warnings.front().find("9999"), std::string::npos);
}

TEST(Pipeline, DuplicateObservationKeyNamesTheRow) {
    t::TempDir dir("etl-dup");
    std::ofstream(dir.path / "crops.csv") << "cropsId,districtId,yearId,area,production\n"
                                          << "A010101,1004,201718,1,2\nA010101,1004,201718,3,4\n";
    auto c = t::desk_config({});
    for (auto& s : c.sources) {
        if (s.name == "Crops") s.path = dir.path / "crops.csv";
    }
    try {
        run_pipeline(c);
        FAIL();
    } catch (const EtlError& e) {
        EXPECT_EQ(e.phase(), "ABox Generation");
        EXPECT_NE(e.cause().find("duplicate"), std::string::npos);
    }
}

TEST(Pipeline, CliReportsFailingPhase) {
    t::TempDir dir("etl-cli");
    auto doc = nlohmann::json::parse(t::read_text(t::desk_dir() / "pipeline.json"));
    doc["mapping"] = (dir.path / "absent.ttl").string();
    for (auto& s : doc["sources"]) {
        s["path"] = (t::desk_dir() / s["path"].get<std::string>()).string();
        if (s.contains("cleansing")) {
            for (auto& sub : s["cleansing"]["substitutions"]) sub["file"] = (t::desk_dir() / sub["file"].get<std::string>()).string();
        }
    }
    for (const char* key : {"tbox"}) doc[key] = (t::desk_dir() / doc[key].get<std::string>()).string();
    doc["links"] = nlohmann::json::array();
    doc["output"] = (dir.path / "o.ttl").string();
    doc["staging"] = (dir.path / "staging").string();
    std::ofstream(dir.path / "config.json") << doc.dump();
    std::ostringstream out, err;
    EXPECT_EQ(service::cmd_etl(dir.path / "config.json", out, err), 1);
    EXPECT_NE(err.str().find("Mapping Generation"), std::string::npos);
    EXPECT_EQ(service::cmd_etl(t::desk_dir() / "pipeline.json", out, err, dir.path / "ok.ttl"), 0);
    EXPECT_EQ(nlohmann::json::parse(out.str())["phases"].size(), 7u);
}
