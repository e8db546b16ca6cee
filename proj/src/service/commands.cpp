#include "kgcube/service/commands.hpp"

#include <csignal>
#include <fstream>
#include <ostream>

#include "kgcube/etl/pipeline.hpp"
#include "kgcube/olap/execute.hpp"
#include "kgcube/olap/operations.hpp"
#include "kgcube/olap/query_json.hpp"
#include "kgcube/olap/sparql.hpp"
#include "kgcube/quality/quality.hpp"
#include "kgcube/rdf/turtle.hpp"
#include "kgcube/schema/tbox.hpp"
#include "kgcube/service/server.hpp"

namespace kgcube::service {

namespace {

struct Loaded {
    rdf::Graph graph;
    schema::CubeSchema schema;
};

Loaded load_dump(const std::filesystem::path& dump) {
    Loaded l;
    l.graph = rdf::load_turtle_file(dump);
    l.schema = schema::load_tbox(l.graph);
    return l;
}

HttpServer* running = nullptr;

extern "C" void on_signal(int) {
    if (running) running->stop();
}

}  // namespace

int cmd_etl(const std::filesystem::path& config, std::ostream& out, std::ostream& err,
            const std::filesystem::path& output) {
    try {
        auto c = etl::load_pipeline_config(config);
        if (!output.empty()) {
            c.output = std::filesystem::absolute(output);
            c.staging = c.output.parent_path() / "staging";
        }
        auto result = etl::run_pipeline(c);
        out << result.report.to_json().dump(2) << "\n";
        return 0;
    } catch (const EtlError& e) {
        err << "etl failed in phase " << e.phase() << ": " << e.cause() << "\n";
    } catch (const std::exception& e) {
        err << "etl failed: " << e.what() << "\n";
    }
    return 1;
}

int cmd_validate(const std::filesystem::path& tbox, std::ostream& out, std::ostream& err) {
    try {
        auto s = schema::load_tbox(rdf::load_turtle_file(tbox));
        if (s.dimensions.empty() && s.levels.empty()) {
            err << tbox.string() << ": no cube schema found\n";
            return 1;
        }
        auto report = schema::validate_tbox(s);
        for (const auto& v : report) out << v.subject << ": " << v.message << "\n";
        if (!report.empty()) {
            err << report.size() << " violation(s)\n";
            return 1;
        }
        out << "ok: " << s.dimensions.size() << " dimensions, " << s.levels.size() << " levels, " << s.measures.size()
            << " measures, " << s.structures.size() << " cuboids\n";
        return 0;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
}

int cmd_query(const std::filesystem::path& dump, const std::filesystem::path& query, QueryOutput format,
              std::ostream& out, std::ostream& err) {
    try {
        std::ifstream in(query);
        if (!in) throw QueryError("cannot read query file " + query.string());
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw QueryError("query file " + query.string() + ": " + e.what());
        }
        const auto& request = olap::unwrap_request(doc);
        auto l = load_dump(dump);
        if (request.is_object() && request.contains("joinLevel")) {
            throw QueryError("federated requests need the endpoint registry; emit them with POST /query/federated");
        }
        olap::ResultTable table;
        if (olap::is_drill_across(request)) {
            if (format == QueryOutput::Sparql) throw QueryError("drill-across requests have no single SPARQL query");
            auto d = olap::drill_across_from_json(request);
            table = olap::drill_across(d.left, d.right, d.shared_levels, l.schema, l.graph);
        } else {
            auto plan = olap::compile(olap::query_from_json(request), l.schema);
            if (format == QueryOutput::Sparql) {
                out << olap::emit_sparql(plan);
                return 0;
            }
            table = olap::execute(plan, l.graph);
        }
        for (const auto& d : table.diagnostics) err << "excluded: " << d << "\n";
        if (format == QueryOutput::Json) {
            out << table.to_json().dump(2) << "\n";
        } else {
            out << table.to_csv();
        }
        return 0;
    } catch (const QueryError& e) {
        err << e.what() << "\n";
        for (const auto& v : e.violations()) err << "  - " << v << "\n";
    } catch (const std::exception& e) {
        err << e.what() << "\n";
    }
    return 1;
}

int cmd_stats(const std::filesystem::path& dump, bool as_json, std::ostream& out, std::ostream& err) {
    try {
        auto l = load_dump(dump);
        auto levels = quality::level_stats(l.graph, l.schema);
        auto cuboids = quality::cuboid_stats(l.graph, l.schema);
        auto completeness = quality::completeness_all(l.graph, l.schema);
        if (as_json) {
            nlohmann::json doc = {{"levels", quality::to_json(levels)},
                                  {"cuboids", quality::to_json(cuboids)},
                                  {"completeness", quality::to_json(completeness)}};
            out << doc.dump(2) << "\n";
        } else {
            out << quality::render_level_stats(levels) << "\n"
                << quality::render_cuboid_stats(cuboids) << "\n"
                << quality::render_completeness(completeness);
        }
        return 0;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
}

int cmd_serve(const std::filesystem::path& config, std::ostream& out, std::ostream& err) {
    try {
        Service service(load_service_config(config));
        HttpServer http(service);
        const auto& c = service.config();
        int port = http.bind(c.host, c.port);
        out << "listening on http://" << c.host << ":" << port << " (" << service.graph().size() << " triples)" << std::endl;
        running = &http;
        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        http.listen();
        running = nullptr;
        return 0;
    } catch (const std::exception& e) {
        err << "serve: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace kgcube::service
