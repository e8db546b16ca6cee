#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgcube/rdf/graph.hpp"
#include "kgcube/schema/cube_schema.hpp"

namespace kgcube::service {

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::filesystem::path dump;
    std::filesystem::path tbox;  // optional; the schema is read from the dump otherwise
    std::filesystem::path mapping;
    std::vector<std::filesystem::path> links;
    std::filesystem::path examples;  // directory of catalog *.json files
    std::map<std::string, std::string> endpoints;  // registry name -> SERVICE IRI
    std::vector<std::string> cors_origins;          // "*" allows any origin
};

// "host:port", ":port" or "port".
void apply_listen(ServiceConfig& c, const std::string& listen);

// Paths are resolved against `base_dir`. KGCUBE_LISTEN and KGCUBE_DUMP
// override the listen address and dump path when set.
ServiceConfig service_config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);
ServiceConfig load_service_config(const std::filesystem::path& path);
void apply_environment(ServiceConfig& c);

struct ApiError {
    int status = 400;
    std::string code;
    std::string message;
    nlohmann::json detail;

    nlohmann::json to_json() const;
};

struct Response {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
    std::map<std::string, std::string> headers;
};

struct CatalogEntry {
    std::string id;
    nlohmann::json document;  // {"id", "title", "kind": "query"|"drillAcross"|"federated", "request"}
};

std::vector<CatalogEntry> load_catalog(const std::filesystem::path& dir);

// Loaded dump, schema and catalog. Immutable after construction, so one
// instance answers concurrent requests.
class Service {
public:
    // Throws kgcube::Error when the dump or TBox fail to load or validate.
    explicit Service(ServiceConfig config);

    Response handle(const std::string& method, const std::string& path, const std::string& body,
                    const std::string& origin = {}) const;

    const rdf::Graph& graph() const { return graph_; }
    const schema::CubeSchema& schema() const { return schema_; }
    const ServiceConfig& config() const { return config_; }

private:
    Response route(const std::string& method, const std::string& path, const std::string& body) const;
    Response query(const nlohmann::json& doc) const;
    Response sparql(const nlohmann::json& doc) const;
    Response federated(const nlohmann::json& doc) const;
    Response stats() const;

    ServiceConfig config_;
    rdf::Graph graph_;
    schema::CubeSchema schema_;
    std::string dump_bytes_;
    std::vector<CatalogEntry> catalog_;
};

// Serves `service` over HTTP with cpp-httplib.
class HttpServer {
public:
    explicit HttpServer(const Service& service);
    ~HttpServer();

    // Binds host:port (port 0 picks a free port) and returns the bound port.
    int bind(const std::string& host, int port);
    void listen();  // blocks until stop()
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace kgcube::service
