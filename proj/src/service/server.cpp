#include "kgcube/service/server.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>

#include "kgcube/olap/execute.hpp"
#include "kgcube/olap/operations.hpp"
#include "kgcube/olap/query_json.hpp"
#include "kgcube/olap/sparql.hpp"
#include "kgcube/quality/quality.hpp"
#include "kgcube/rdf/turtle.hpp"
#include "kgcube/schema/schema_json.hpp"
#include "kgcube/schema/tbox.hpp"

namespace kgcube::service {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
    fs::path path(p);
    return path.is_absolute() ? path : (base / path).lexically_normal();
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Failure {
    ApiError error;
};

[[noreturn]] void fail(int status, std::string code, std::string message, json detail = nullptr) {
    throw Failure{{status, std::move(code), std::move(message), std::move(detail)}};
}

Response json_response(const json& doc, int status = 200) {
    return {status, "application/json", doc.dump(), {}};
}

Response text_response(std::string text, std::string type = "application/sparql-query") {
    return {200, std::move(type), std::move(text), {}};
}

json parse_body(const std::string& body) {
    try {
        return json::parse(body);
    } catch (const json::exception& e) {
        fail(400, "malformed_json", "request body is not valid JSON", e.what());
    }
}

const json& member(const json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) fail(400, "malformed_request", std::string("missing \"") + key + "\"");
    return doc.at(key);
}

std::string string_member(const json& doc, const char* key) {
    const auto& v = member(doc, key);
    if (!v.is_string()) fail(400, "malformed_request", std::string("\"") + key + "\" must be a string");
    return v.get<std::string>();
}

std::map<std::string, std::string> prefixes_of(const json& doc) {
    std::map<std::string, std::string> out;
    if (doc.is_object() && doc.contains("prefixes") && doc.at("prefixes").is_object()) {
        for (const auto& [k, v] : doc.at("prefixes").items()) {
            if (v.is_string()) out[k] = v.get<std::string>();
        }
    }
    return out;
}

}  // namespace

void apply_listen(ServiceConfig& c, const std::string& listen) {
    auto colon = listen.rfind(':');
    std::string host = colon == std::string::npos ? "" : listen.substr(0, colon);
    std::string port = colon == std::string::npos ? listen : listen.substr(colon + 1);
    int p = 0;
    try {
        std::size_t used = 0;
        p = std::stoi(port, &used);
        if (used != port.size()) throw std::invalid_argument(port);
    } catch (const std::exception&) {
        throw Error("invalid listen address '" + listen + "'");
    }
    if (p < 0 || p > 65535) throw Error("port out of range in '" + listen + "'");
    if (!host.empty()) c.host = host;
    c.port = p;
}

void apply_environment(ServiceConfig& c) {
    if (const char* listen = std::getenv("KGCUBE_LISTEN"); listen && *listen) apply_listen(c, listen);
    if (const char* dump = std::getenv("KGCUBE_DUMP"); dump && *dump) c.dump = dump;
}

ServiceConfig service_config_from_json(const json& doc, const fs::path& base_dir) {
    if (!doc.is_object()) throw Error("service config must be a JSON object");
    ServiceConfig c;
    try {
        if (doc.contains("listen")) apply_listen(c, doc.at("listen").get<std::string>());
        if (doc.contains("dump")) c.dump = resolve(base_dir, doc.at("dump").get<std::string>());
        if (doc.contains("tbox")) c.tbox = resolve(base_dir, doc.at("tbox").get<std::string>());
        if (doc.contains("mapping")) c.mapping = resolve(base_dir, doc.at("mapping").get<std::string>());
        if (doc.contains("examples")) c.examples = resolve(base_dir, doc.at("examples").get<std::string>());
        for (const auto& l : doc.value("links", json::array())) c.links.push_back(resolve(base_dir, l.get<std::string>()));
        c.endpoints = doc.value("endpoints", std::map<std::string, std::string>{});
        c.cors_origins = doc.value("cors", std::vector<std::string>{});
    } catch (const json::exception& e) {
        throw Error(std::string("service config: ") + e.what());
    }
    apply_environment(c);
    return c;
}

ServiceConfig load_service_config(const fs::path& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw Error("service config " + path.string() + ": " + e.what());
    }
    return service_config_from_json(doc, fs::absolute(path).parent_path());
}

json ApiError::to_json() const { return {{"code", code}, {"message", message}, {"detail", detail}}; }

std::vector<CatalogEntry> load_catalog(const fs::path& dir) {
    std::vector<CatalogEntry> out;
    if (dir.empty()) return out;
    if (!fs::is_directory(dir)) throw Error("examples directory not found: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        json doc;
        try {
            doc = json::parse(read_file(f));
        } catch (const json::exception& e) {
            throw Error("catalog entry " + f.string() + ": " + e.what());
        }
        std::string id = doc.value("id", f.stem().string());
        out.push_back({id, std::move(doc)});
    }
    return out;
}

Service::Service(ServiceConfig config) : config_(std::move(config)) {
    if (config_.dump.empty()) throw Error("service config has no dump path");
    dump_bytes_ = read_file(config_.dump);
    graph_ = rdf::parse_turtle(dump_bytes_);
    schema_ = schema::load_tbox(config_.tbox.empty() ? graph_ : rdf::load_turtle_file(config_.tbox));
    auto report = schema::validate_tbox(schema_);
    if (!report.empty()) {
        std::string msg = "TBox does not validate:";
        for (const auto& v : report) msg += "\n  " + v.subject + ": " + v.message;
        throw SchemaError(msg);
    }
    catalog_ = load_catalog(config_.examples);
}

Response Service::handle(const std::string& method, const std::string& path, const std::string& body,
                         const std::string& origin) const {
    Response r;
    try {
        r = route(method, path, body);
    } catch (const Failure& f) {
        r = json_response(f.error.to_json(), f.error.status);
    } catch (const QueryError& e) {
        r = json_response(ApiError{422, "invalid_query", e.what(), e.violations()}.to_json(), 422);
    } catch (const SchemaError& e) {
        r = json_response(ApiError{422, "schema_error", e.what(), e.details()}.to_json(), 422);
    } catch (const Error& e) {
        r = json_response(ApiError{422, "error", e.what(), nullptr}.to_json(), 422);
    } catch (const std::exception& e) {
        r = json_response(ApiError{500, "internal", e.what(), nullptr}.to_json(), 500);
    }
    if (!origin.empty()) {
        const auto& allow = config_.cors_origins;
        bool any = std::find(allow.begin(), allow.end(), "*") != allow.end();
        if (any || std::find(allow.begin(), allow.end(), origin) != allow.end()) {
            r.headers["Access-Control-Allow-Origin"] = origin;
            r.headers["Vary"] = "Origin";
            r.headers["Access-Control-Allow-Methods"] = "GET, POST, OPTIONS";
            r.headers["Access-Control-Allow-Headers"] = "Content-Type";
        }
    }
    return r;
}

Response Service::route(const std::string& method, const std::string& path, const std::string& body) const {
    static const std::map<std::string, std::string> routes = {
        {"/health", "GET"},       {"/schema", "GET"},        {"/examples", "GET"},
        {"/stats", "GET"},        {"/dump.ttl", "GET"},      {"/query", "POST"},
        {"/query/sparql", "POST"}, {"/query/federated", "POST"},
    };
    auto it = routes.find(path);
    if (it == routes.end()) fail(404, "not_found", "no endpoint " + path);
    if (method == "OPTIONS") return {204, "text/plain", "", {}};
    if (method != it->second) fail(405, "method_not_allowed", path + " accepts " + it->second + " only");

    if (path == "/health") return json_response({{"status", "ok"}, {"triples", graph_.size()}});
    if (path == "/schema") return json_response(schema::to_json(schema_));
    if (path == "/examples") {
        json list = json::array();
        for (const auto& e : catalog_) list.push_back(e.document);
        return json_response(list);
    }
    if (path == "/stats") return stats();
    if (path == "/dump.ttl") return text_response(dump_bytes_, "text/turtle");

    json doc = parse_body(body);
    if (path == "/query") return query(doc);
    if (path == "/query/sparql") return sparql(doc);
    return federated(doc);
}

Response Service::query(const json& doc) const {
    if (olap::is_drill_across(doc)) {
        auto d = olap::drill_across_from_json(doc);
        return json_response(olap::drill_across(d.left, d.right, d.shared_levels, schema_, graph_).to_json());
    }
    auto q = olap::query_from_json(doc);
    return json_response(olap::run_query(q, schema_, graph_).to_json());
}

Response Service::sparql(const json& doc) const {
    auto q = olap::query_from_json(doc);
    return text_response(olap::emit_sparql(olap::compile(q, schema_)));
}

Response Service::federated(const json& doc) const {
    auto q = olap::query_from_json(member(doc, "query"));
    std::string name = string_member(doc, "endpoint");
    auto it = config_.endpoints.find(name);
    if (it == config_.endpoints.end()) {
        json known = json::array();
        for (const auto& [k, v] : config_.endpoints) known.push_back(k);
        fail(422, "unknown_endpoint", "no endpoint named " + name + " in the registry", known);
    }
    olap::FederatedSpec spec{it->second, olap::expand_curie(string_member(doc, "joinLevel"), prefixes_of(member(doc, "query"))),
                             string_member(doc, "pattern")};
    return text_response(olap::emit_federated_sparql(q, schema_, spec, &graph_));
}

Response Service::stats() const {
    auto levels = quality::level_stats(graph_, schema_);
    auto cuboids = quality::cuboid_stats(graph_, schema_);
    auto completeness = quality::completeness_all(graph_, schema_);
    return json_response({{"levels", quality::to_json(levels)},
                          {"cuboids", quality::to_json(cuboids)},
                          {"completeness", quality::to_json(completeness)}});
}

struct HttpServer::Impl {
    const Service& service;
    httplib::Server server;

    explicit Impl(const Service& s) : service(s) {
        auto handler = [this](const httplib::Request& req, httplib::Response& res) {
            auto r = service.handle(req.method, req.path, req.body, req.get_header_value("Origin"));
            res.status = r.status;
            for (const auto& [k, v] : r.headers) res.set_header(k, v);
            if (r.status != 204) res.set_content(r.body, r.content_type);
        };
        server.Get(".*", handler);
        server.Post(".*", handler);
        server.Options(".*", handler);
        server.Put(".*", handler);
        server.Delete(".*", handler);
        server.Patch(".*", handler);
    }
};

HttpServer::HttpServer(const Service& service) : impl_(std::make_unique<Impl>(service)) {}
HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
    int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
    if (bound < 0) throw Error("cannot bind " + host + ":" + std::to_string(port));
    return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }
void HttpServer::stop() { impl_->server.stop(); }

}  // namespace kgcube::service
