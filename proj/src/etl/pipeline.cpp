#include "kgcube/etl/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "kgcube/etl/abox.hpp"
#include "kgcube/etl/links.hpp"
#include "kgcube/mapping/csv.hpp"
#include "kgcube/mapping/mapping_set.hpp"
#include "kgcube/rdf/turtle.hpp"
#include "kgcube/schema/tbox.hpp"

namespace kgcube::etl {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
    fs::path path(p);
    return path.is_absolute() ? path : (base / path).lexically_normal();
}

std::string required(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc.at(key).is_string()) throw EtlError("Extraction", std::string("pipeline config: missing string '") + key + "'");
    return doc.at(key).get<std::string>();
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

class Runner {
public:
    explicit Runner(const PipelineConfig& c) : c_(c) {
        for (auto n : phase_names) report_.phases.push_back({std::string(n), 0, 0, false});
        report_.output = c_.output.string();
    }

    PipelineResult run() {
        if (!c_.staging.empty()) fs::create_directories(c_.staging);
        phase(0, [&] { return extraction(); });
        phase(1, [&] { return target_tbox(); });
        phase(2, [&] { return source_tbox(); });
        phase(3, [&] { return mappings(); });
        phase(4, [&] { return abox(); });
        phase(5, [&] { return linking(); });
        phase(6, [&] { return load(); });
        report_.triples = full_.size();
        save_report();
        return {std::move(full_), std::move(report_)};
    }

private:
    template <class F>
    void phase(std::size_t index, F&& body) {
        auto& stat = report_.phases[index];
        auto start = std::chrono::steady_clock::now();
        try {
            stat.records = body();
        } catch (const EtlError& e) {
            save_report();
            if (e.phase() == stat.name) throw;
            throw EtlError(stat.name, e.what());
        } catch (const std::exception& e) {
            save_report();
            throw EtlError(stat.name, e.what());
        }
        stat.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        stat.completed = true;
        save_report();
    }

    void stage(const std::string& name, const std::string& text) {
        if (!c_.staging.empty()) write_file(c_.staging / name, text);
    }

    void save_report() {
        if (c_.staging.empty()) return;
        try {
            write_file(c_.staging / "report.json", report_.to_json().dump(2) + "\n");
        } catch (const std::exception&) {
        }
    }

    std::size_t extraction() {
        std::size_t rows = 0;
        for (const auto& s : c_.sources) {
            auto data = extract_csv(s.path, s.cleansing, s.name);
            rows += data.rows.size();
            stage("extracted/" + s.name + ".csv", mapping::write_csv(data.table.column_names(), data.rows));
            data_.push_back(std::move(data));
        }
        return rows;
    }

    std::size_t target_tbox() {
        tbox_graph_ = rdf::load_turtle_file(c_.tbox);
        schema_ = schema::load_tbox(tbox_graph_);
        auto report = schema::validate_tbox(schema_);
        if (!report.empty()) {
            std::string msg = "TBox does not validate:";
            for (const auto& v : report) msg += "\n  " + v.subject + ": " + v.message;
            throw EtlError("Target TBox Generation", msg);
        }
        stage("target_tbox.ttl", rdf::serialize_turtle(tbox_graph_));
        return tbox_graph_.size();
    }

    std::size_t source_tbox() {
        std::size_t props = 0;
        for (const auto& d : data_) {
            source_tboxes_.push_back(mapping::infer_source_tbox(d.table, c_.source_ns));
            props += source_tboxes_.back().properties.size();
        }
        stage("source_tbox.ttl", rdf::serialize_turtle(mapping::source_tbox_graph(source_tboxes_, c_.source_ns)));
        return props;
    }

    std::size_t mappings() {
        if (!fs::exists(c_.mapping)) throw EtlError("Mapping Generation", "mapping file not found: " + c_.mapping.string());
        auto g = rdf::load_turtle_file(c_.mapping);
        mappings_ = mapping::parse_mappings(g, source_tboxes_, schema_, c_.map_ns);
        for (const auto& t : source_tboxes_) {
            if (!mappings_.for_source(t.class_iri)) throw EtlError("Mapping Generation", "no concept mapping for source " + t.class_iri);
        }
        stage("mapping.ttl", rdf::serialize_turtle(g));
        return mappings_.concepts.size();
    }

    std::size_t abox() {
        IriScheme iris(c_.base_iri);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            const auto* cm = mappings_.for_source(source_tboxes_[i].class_iri);
            if (cm->target_kind == mapping::TargetKind::Level) {
                abox_.merge(generate_level_members(schema_, *cm, data_[i], iris));
                continue;
            }
            std::string ds = c_.sources[i].dataset;
            if (ds.empty()) {
                auto candidates = schema_.datasets_of(cm->target_concept);
                if (candidates.size() != 1) {
                    throw EtlError("ABox Generation", "source " + c_.sources[i].name + ": structure " + cm->target_concept +
                                                          " needs exactly one dataset (set \"dataset\" in the config)");
                }
                ds = candidates.front();
            }
            const auto* dataset = schema_.dataset(ds);
            if (!dataset) throw EtlError("ABox Generation", "unknown dataset " + ds);
            abox_.merge(generate_observations(schema_, *cm, data_[i], *dataset, iris));
        }
        auto problems = dangling_rollups(abox_, schema_);
        auto refs = dangling_level_refs(abox_, schema_);
        problems.insert(problems.end(), refs.begin(), refs.end());
        if (!problems.empty()) {
            if (c_.strict) {
                std::string msg = std::to_string(problems.size()) + " dangling references, first: " + problems.front();
                throw EtlError("ABox Generation", msg);
            }
            report_.warnings.insert(report_.warnings.end(), problems.begin(), problems.end());
        }
        abox_.prefixes() = tbox_graph_.prefixes();
        stage("abox.ttl", rdf::serialize_turtle(abox_));
        return abox_.size();
    }

    std::size_t linking() {
        std::size_t added = 0;
        for (const auto& p : c_.links) added += apply_links(abox_, read_links(p), c_.strict);
        return added;
    }

    std::size_t load() {
        full_.prefixes() = schema::standard_prefixes();
        full_.merge(tbox_graph_);
        full_.merge(abox_);
        auto text = rdf::serialize_turtle(full_);
        if (!c_.output.empty()) write_file(c_.output, text);
        stage("dump.ttl", text);
        return full_.size();
    }

    const PipelineConfig& c_;
    PhaseReport report_;
    std::vector<mapping::TabularDataset> data_;
    rdf::Graph tbox_graph_;
    schema::CubeSchema schema_;
    std::vector<mapping::SourceTBox> source_tboxes_;
    mapping::MappingSet mappings_;
    rdf::Graph abox_;
    rdf::Graph full_;
};

}  // namespace

PipelineConfig pipeline_config_from_json(const json& doc, const fs::path& base_dir) {
    if (!doc.is_object()) throw EtlError("Extraction", "pipeline config must be a JSON object");
    PipelineConfig c;
    c.base_iri = doc.value("baseIri", c.base_iri);
    c.source_ns = doc.value("sourceNamespace", c.source_ns);
    c.map_ns = doc.value("mapNamespace", c.map_ns);
    if (c.base_iri.find("://") == std::string::npos) throw EtlError("Extraction", "baseIri must be absolute: " + c.base_iri);
    c.tbox = resolve(base_dir, required(doc, "tbox"));
    c.mapping = resolve(base_dir, required(doc, "mapping"));
    c.output = resolve(base_dir, required(doc, "output"));
    c.staging = doc.contains("staging") ? resolve(base_dir, required(doc, "staging")) : c.output.parent_path() / "staging";
    c.strict = doc.value("strict", true);
    for (const auto& s : doc.value("sources", json::array())) {
        SourceConfig sc;
        sc.name = required(s, "name");
        sc.path = resolve(base_dir, required(s, "path"));
        sc.cleansing = cleansing_from_json(s.value("cleansing", json()), base_dir);
        sc.dataset = s.value("dataset", std::string());
        c.sources.push_back(std::move(sc));
    }
    for (const auto& l : doc.value("links", json::array())) c.links.push_back(resolve(base_dir, l.get<std::string>()));
    return c;
}

PipelineConfig load_pipeline_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw EtlError("Extraction", "cannot read pipeline config " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw EtlError("Extraction", "pipeline config " + path.string() + ": " + e.what());
    }
    return pipeline_config_from_json(doc, fs::absolute(path).parent_path());
}

json PhaseReport::to_json() const {
    json phases_json = json::array();
    for (const auto& p : phases) {
        phases_json.push_back({{"name", p.name}, {"elapsedMs", p.elapsed_ms}, {"records", p.records}, {"completed", p.completed}});
    }
    return {{"phases", phases_json}, {"triples", triples}, {"warnings", warnings}, {"output", output}};
}

PipelineResult run_pipeline(const PipelineConfig& config) { return Runner(config).run(); }

}  // namespace kgcube::etl
