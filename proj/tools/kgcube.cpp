#include <iostream>

#include <CLI11.hpp>

#include "kgcube/service/commands.hpp"

using namespace kgcube::service;

int main(int argc, char** argv) {
    CLI::App app{"Build, inspect and query multidimensional knowledge graphs"};
    app.require_subcommand(1);

    std::string etl_config, etl_output;
    auto* etl = app.add_subcommand("etl", "run the ETL pipeline");
    etl->add_option("config", etl_config, "pipeline config JSON")->required()->check(CLI::ExistingFile);
    etl->add_option("-o,--output", etl_output, "dump path overriding the config");

    std::string tbox;
    auto* validate = app.add_subcommand("validate", "check a TBox (or dump) for schema violations");
    validate->add_option("tbox", tbox, "Turtle file")->required()->check(CLI::ExistingFile);

    std::string dump, query;
    bool emit_sparql = false, as_json = false;
    auto* q = app.add_subcommand("query", "run an OLAP query file against a dump");
    q->add_option("dump", dump, "Turtle dump")->required()->check(CLI::ExistingFile);
    q->add_option("query", query, "query JSON")->required()->check(CLI::ExistingFile);
    q->add_flag("--emit-sparql", emit_sparql, "print the SPARQL text instead of executing");
    q->add_flag("--json", as_json, "print the result as JSON instead of CSV");

    std::string stats_dump;
    bool stats_json = false;
    auto* stats = app.add_subcommand("stats", "level, cuboid and completeness statistics");
    stats->add_option("dump", stats_dump, "Turtle dump")->required()->check(CLI::ExistingFile);
    stats->add_flag("--json", stats_json, "JSON output");

    std::string serve_config;
    auto* serve = app.add_subcommand("serve", "serve the HTTP API");
    serve->add_option("config", serve_config, "service config JSON")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // usage errors exit 2 so they stay distinct from command failures
        return app.exit(e) == 0 ? 0 : 2;
    }

    if (*etl) return cmd_etl(etl_config, std::cout, std::cerr, etl_output);
    if (*validate) return cmd_validate(tbox, std::cout, std::cerr);
    if (*q) {
        auto format = emit_sparql ? QueryOutput::Sparql : (as_json ? QueryOutput::Json : QueryOutput::Csv);
        return cmd_query(dump, query, format, std::cout, std::cerr);
    }
    if (*stats) return cmd_stats(stats_dump, stats_json, std::cout, std::cerr);
    return cmd_serve(serve_config, std::cout, std::cerr);
}
