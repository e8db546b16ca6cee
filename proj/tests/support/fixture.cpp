#include "support/fixture.hpp"

#include <fstream>
#include <unistd.h>
#include <set>
#include <sstream>

#include <json.hpp>

#include "kgcube/mapping/csv.hpp"
#include "kgcube/schema/tbox.hpp"

namespace kgcube::testing {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path source_dir() { return KGCUBE_SOURCE_DIR; }
fs::path desk_dir() { return source_dir() / "fixtures" / "desk"; }
fs::path catalog_dir() { return source_dir() / "catalog"; }

fs::path desk_dump() { return KGCUBE_DESK_DUMP; }

TempDir::TempDir(const std::string& name)
    : path(fs::path(KGCUBE_BINARY_DIR) / "scratch" / (name + "-" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

etl::PipelineConfig desk_config(const fs::path& out_dir) {
    auto c = etl::load_pipeline_config(desk_dir() / "pipeline.json");
    c.output = out_dir.empty() ? fs::path() : out_dir / "bdakg.ttl";
    c.staging = out_dir.empty() ? fs::path() : out_dir / "staging";
    return c;
}

const Desk& desk() {
    static const Desk d = [] {
        auto result = etl::run_pipeline(desk_config({}));
        Desk out;
        out.schema = schema::load_tbox(result.graph);
        out.graph = std::move(result.graph);
        out.report = std::move(result.report);
        return out;
    }();
    return d;
}

schema::CubeSchema random_schema(std::mt19937& rng) {
    using namespace schema;
    const std::string ns = "http://example.org/rand#";
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const std::vector<std::string> dtypes = {"http://www.w3.org/2001/XMLSchema#string",
                                             "http://www.w3.org/2001/XMLSchema#integer",
                                             "http://www.w3.org/2001/XMLSchema#date"};
    const std::vector<std::string> mtypes = {"http://www.w3.org/2001/XMLSchema#float",
                                             "http://www.w3.org/2001/XMLSchema#integer",
                                             "http://www.w3.org/2001/XMLSchema#decimal",
                                             "http://www.w3.org/2001/XMLSchema#double"};
    CubeSchema s;
    int level_no = 0;
    std::map<std::string, std::vector<std::string>> bases;  // dimension -> finest levels
    int dims = pick(1, 3);
    for (int d = 0; d < dims; ++d) {
        Dimension dim{ns + "dim" + std::to_string(d), {}};
        int hs = pick(1, 2);
        for (int h = 0; h < hs; ++h) {
            Hierarchy hier;
            hier.iri = ns + "hier" + std::to_string(d) + "_" + std::to_string(h);
            hier.dimension = dim.iri;
            int depth = pick(1, 4);
            for (int k = 0; k < depth; ++k) hier.levels.push_back(ns + "Level" + std::to_string(level_no++));
            for (int k = 0; k < depth; ++k) {
                Level l;
                l.iri = hier.levels[k];
                std::string local = "l" + l.iri.substr(ns.size() + 5);
                l.identifier = ns + local + "Id";
                l.attributes.push_back({l.identifier, AttributeKind::Datatype, dtypes[pick(0, 1)]});
                int extra = pick(0, 3);
                for (int e = 0; e < extra; ++e) {
                    l.attributes.push_back({ns + local + "Attr" + std::to_string(e), AttributeKind::Datatype,
                                            dtypes[pick(0, 2)]});
                }
                if (k + 1 < depth) {
                    std::string rollup = ns + local + "Up";
                    l.attributes.push_back({rollup, AttributeKind::Object, hier.levels[k + 1]});
                    hier.steps.push_back({l.iri, hier.levels[k + 1], rollup, static_cast<Cardinality>(pick(0, 2))});
                }
                s.levels.emplace(l.iri, std::move(l));
            }
            bases[dim.iri].push_back(hier.levels.front());
            dim.hierarchies.push_back(hier.iri);
            s.hierarchies.emplace(hier.iri, std::move(hier));
        }
        s.dimensions.emplace(dim.iri, std::move(dim));
    }
    int measures = pick(1, 3);
    for (int m = 0; m < measures; ++m) {
        Measure ms{ns + "measure" + std::to_string(m), mtypes[pick(0, 3)], static_cast<AggregateFunction>(pick(0, 4))};
        s.measures.emplace(ms.iri, std::move(ms));
    }
    int cuboids = pick(1, 2);
    for (int c = 0; c < cuboids; ++c) {
        CuboidStructure st;
        st.iri = ns + "cuboid" + std::to_string(c);
        for (const auto& [dim, levels] : bases) {
            if (c > 0 && pick(0, 2) == 0) continue;
            st.levels.push_back({dim, levels[pick(0, static_cast<int>(levels.size()) - 1)]});
        }
        for (const auto& [iri, m] : s.measures) {
            if (st.measures.empty() || pick(0, 1)) st.measures.push_back(iri);
        }
        s.datasets.emplace(ns + "dataset" + std::to_string(c), CubeDataset{ns + "dataset" + std::to_string(c), st.iri});
        s.structures.emplace(st.iri, std::move(st));
    }
    normalize(s);
    return s;
}

namespace {

std::map<std::string, std::map<std::string, std::string>> read_level(const fs::path& csv, const std::string& id) {
    auto table = mapping::read_csv_file(csv);
    std::map<std::string, std::map<std::string, std::string>> out;
    for (const auto& row : table.rows) {
        std::map<std::string, std::string> attrs;
        for (std::size_t i = 0; i < table.header.size(); ++i) attrs[table.header[i]] = row[i];
        out[attrs.at(id)] = std::move(attrs);
    }
    return out;
}

std::string measure_text(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

}  // namespace

const OracleFixture& oracle_fixture() {
    static const OracleFixture f = [] {
        OracleFixture out;
        auto lv = desk_dir() / "levels";
        const std::vector<std::pair<std::string, std::string>> files = {
            {"District", "districtId"}, {"Division", "divisionId"}, {"All", "allId"},
            {"Product", "productId"},   {"Category", "categoryId"}, {"Sector", "sectorId"},
            {"Agriculture", "agricultureId"}, {"Time", "yearId"}};
        for (const auto& [level, id] : files) {
            std::string file = level;
            for (auto& ch : file) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            out.levels[level] = read_level(lv / (file + ".csv"), id);
        }

        std::mt19937 rng(4242);
        std::vector<std::string> products, districts, years;
        for (const auto& [k, _] : out.levels["Product"]) products.push_back(k);
        for (const auto& [k, _] : out.levels["District"]) districts.push_back(k);
        for (const auto& [k, _] : out.levels["Time"]) years.push_back(k);
        // a narrow time window keeps groups populated
        years = std::vector<std::string>(years.end() - 6, years.end());
        auto any = [&](const std::vector<std::string>& v) {
            return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
        };
        std::set<std::string> keys;
        std::uniform_int_distribution<int> amount(1, 4000);
        std::uniform_int_distribution<int> quarter(0, 3);
        std::uniform_int_distribution<int> pct(0, 99);
        while (out.rows.size() < 2000) {
            OracleFixture::Row r{any(products), any(districts), any(years), {}, {}};
            if (!keys.insert(r.product + r.district + r.year).second) continue;
            r.area = amount(rng) + quarter(rng) * 0.25;
            if (pct(rng) >= 5) r.production = amount(rng) * 3 + quarter(rng) * 0.5;
            out.rows.push_back(r);
        }

        TempDir tmp("oracle");
        const auto& dir = tmp.path;
        std::vector<std::vector<std::string>> cells;
        for (const auto& r : out.rows) {
            cells.push_back({r.product, r.district, r.year, measure_text(*r.area),
                             r.production ? measure_text(*r.production) : std::string()});
        }
        std::ofstream(dir / "crops.csv") << mapping::write_csv({"cropsId", "districtId", "yearId", "area", "production"}, cells);

        auto c = desk_config({});
        std::vector<etl::SourceConfig> kept;
        for (auto& s : c.sources) {
            if (s.name == "Banana") continue;
            if (s.name == "Crops") s.path = dir / "crops.csv";
            kept.push_back(std::move(s));
        }
        c.sources = std::move(kept);
        // same mapping file without the banana concept mapping
        std::string text = read_text(c.mapping), kept_text;
        std::size_t pos = 0;
        while (pos < text.size()) {
            auto end = text.find("\n\n", pos);
            end = end == std::string::npos ? text.size() : end + 2;
            std::string block = text.substr(pos, end - pos);
            if (block.find("onto:Banana ") == std::string::npos) kept_text += block;
            pos = end;
        }
        c.mapping = dir / "mapping.ttl";
        std::ofstream(c.mapping) << kept_text;
        auto result = etl::run_pipeline(c);
        out.schema = schema::load_tbox(result.graph);
        out.graph = std::move(result.graph);
        return out;
    }();
    return f;
}

}  // namespace kgcube::testing
