#pragma once

// HTTP JSON API over the curve kernel. Requests are dispatched through
// Service::handle, which needs no socket; install() wires it into an
// httplib server.

#include "json.hpp"
#include "pqbezier/store.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace httplib {
class Server;
}

namespace pqbezier {

struct ApiRequest {
    std::string method;
    std::string path;
    std::string body;
    std::map<std::string, std::string> query;
    std::optional<std::string> origin;
};

struct ApiResponse {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
    std::vector<std::pair<std::string, std::string>> headers;

    nlohmann::json json() const { return nlohmann::json::parse(body); }
};

/// Carries the HTTP status an endpoint wants to report.
class ApiError : public std::runtime_error {
public:
    ApiError(int status, const std::string& message, nlohmann::json detail = nullptr)
        : std::runtime_error(message), status_(status), detail_(std::move(detail)) {}
    int status() const { return status_; }
    const nlohmann::json& detail() const { return detail_; }

private:
    int status_;
    nlohmann::json detail_;
};

struct ServiceConfig {
    std::filesystem::path store_root = "curves";
    std::optional<std::filesystem::path> static_dir;
    int max_audit_degree = 6;
};

/// http(s)://localhost, 127.0.0.1 or [::1], any port.
bool is_local_origin(const std::string& origin);

// Endpoint bodies; they throw ApiError or library exceptions, mapped by Service::handle.
nlohmann::json api_evaluate(const nlohmann::json& request);
nlohmann::json api_elevate(const nlohmann::json& request);
nlohmann::json api_subdivide(const nlohmann::json& request);
nlohmann::json api_blossom(const nlohmann::json& request);
nlohmann::json api_audit(const nlohmann::json& request, int max_degree);

class Service {
public:
    explicit Service(ServiceConfig config);

    ApiResponse handle(const ApiRequest& request) const;
    void install(httplib::Server& server) const;

    const ServiceConfig& config() const { return config_; }

private:
    ApiResponse route(const ApiRequest& request) const;
    ApiResponse curves(const ApiRequest& request, const std::string& name) const;

    ServiceConfig config_;
    mutable CurveDocumentStore store_;
};

}  // namespace pqbezier
