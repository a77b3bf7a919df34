#include "pqbezier/service.hpp"

#include "httplib.h"
#include "pqbezier/audit.hpp"
#include "pqbezier/blossom.hpp"
#include "pqbezier/curve.hpp"
#include "pqbezier/document.hpp"

#include <regex>
#include <set>

namespace pqbezier {

namespace {

using nlohmann::json;

void require_object(const json& body, const std::set<std::string>& allowed, const std::set<std::string>& required) {
    if (!body.is_object()) throw ApiError(400, "request body must be a JSON object");
    for (const auto& [key, _] : body.items())
        if (!allowed.contains(key)) throw ApiError(400, "unknown field '" + key + "'");
    for (const auto& key : required)
        if (!body.contains(key)) throw ApiError(400, "missing field '" + key + "'");
}

PqBezierCurve<double> request_curve(const json& body) { return curve_from_document<double>(body.at("curve")); }

Algorithm parse_algorithm(const json& j) {
    if (!j.is_string()) throw ApiError(400, "algorithm: expected a string");
    const auto s = j.get<std::string>();
    for (auto a : {Algorithm::direct, Algorithm::dc1, Algorithm::dc2, Algorithm::permuted})
        if (s == to_string(a)) return a;
    throw ApiError(400, "algorithm: expected one of direct, dc1, dc2, perm");
}

std::vector<int> parse_sigma(const json& j) {
    if (!j.is_array()) throw ApiError(400, "sigma: expected an array of integers");
    std::vector<int> sigma;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw ApiError(400, "sigma: expected an array of integers");
        sigma.push_back(v.get<int>());
    }
    return sigma;
}

Rational exact_param(const json& j, const std::string& where) {
    if (j.is_number_float()) throw ApiError(422, "audit requires exact arithmetic; give " + where + " as \"num/den\"");
    return scalar_from_json_exact(j, where);
}

ApiResponse json_response(int status, const json& body) { return {status, body.dump(), "application/json", {}}; }

ApiResponse error_response(int status, const std::string& message, const json& detail = nullptr) {
    json body{{"error", message}};
    if (!detail.is_null()) body["detail"] = detail;
    return json_response(status, body);
}

bool truthy(const std::string& v) { return v == "1" || v == "true" || v == "yes"; }

}  // namespace

bool is_local_origin(const std::string& origin) {
    static const std::regex pattern(R"(^https?://(localhost|127\.0\.0\.1|\[::1\])(:[0-9]{1,5})?$)");
    return std::regex_match(origin, pattern);
}

json api_evaluate(const json& body) {
    require_object(body, {"curve", "t", "algorithm", "sigma"}, {"curve", "t"});
    const auto curve = request_curve(body);
    const auto& jt = body.at("t");
    if (!jt.is_array()) throw ApiError(400, "t: expected an array");
    std::vector<double> ts;
    for (std::size_t i = 0; i < jt.size(); ++i) ts.push_back(scalar_from_json_float(jt[i], "t[" + std::to_string(i) + "]"));
    const Algorithm algorithm = body.contains("algorithm") ? parse_algorithm(body.at("algorithm")) : Algorithm::direct;
    std::vector<int> sigma;
    if (body.contains("sigma")) {
        if (algorithm != Algorithm::permuted) throw ApiError(422, "sigma only applies to algorithm perm");
        sigma = parse_sigma(body.at("sigma"));
    }
    if (algorithm == Algorithm::permuted) {
        if (!body.contains("sigma")) throw ApiError(422, "algorithm perm needs sigma");
        check_permutation(sigma, curve.degree());
    }
    json points = json::array();
    for (double t : ts) {
        auto pt = algorithm == Algorithm::permuted ? evaluate_permuted(curve, t, sigma) : evaluate(curve, t, algorithm);
        points.push_back(point_to_json(pt));
    }
    return {{"points", points}};
}

json api_elevate(const json& body) {
    require_object(body, {"curve"}, {"curve"});
    return document_from_curve(degree_elevate(request_curve(body)));
}

json api_subdivide(const json& body) {
    require_object(body, {"curve", "r", "tolerance"}, {"curve", "r"});
    const auto curve = request_curve(body);
    const double r = scalar_from_json_float(body.at("r"), "r");
    AdaptiveOptions opt;
    if (body.contains("tolerance")) {
        opt.tolerance = scalar_from_json_float(body.at("tolerance"), "tolerance");
        if (!(opt.tolerance > 0)) throw ApiError(422, "tolerance must be positive");
    }
    auto result = subdivide(curve, r, opt);
    json right = json::array();
    for (const auto& pt : result.right_samples) right.push_back(point_to_json(pt));
    return {{"left", document_from_curve(result.left)}, {"right_samples", right}};
}

json api_blossom(const json& body) {
    require_object(body, {"curve", "u"}, {"curve"});
    const auto curve = request_curve(body);
    const auto form = blossom_from_polynomial(polynomial_from_curve(curve), curve.params());
    if (!body.contains("u")) {
        json cps = json::array();
        for (const auto& pt : dual_control_points(form)) cps.push_back(point_to_json(pt));
        return {{"control_points", cps}};
    }
    const auto& ju = body.at("u");
    if (!ju.is_array()) throw ApiError(400, "u: expected an array");
    if (ju.size() != static_cast<std::size_t>(curve.degree()))
        throw ApiError(422, "u: expected exactly " + std::to_string(curve.degree()) + " arguments");
    std::vector<double> u;
    for (std::size_t i = 0; i < ju.size(); ++i) u.push_back(scalar_from_json_float(ju[i], "u[" + std::to_string(i) + "]"));
    return {{"value", point_to_json(blossom_evaluate(form, std::span<const double>(u)))}};
}

json api_audit(const json& body, int max_degree) {
    require_object(body, {"n_max", "params"}, {});
    int n_max = 4;
    if (body.contains("n_max")) {
        if (!body.at("n_max").is_number_integer()) throw ApiError(400, "n_max: expected an integer");
        n_max = body.at("n_max").get<int>();
    }
    if (n_max < 0 || n_max > max_degree)
        throw ApiError(422, "n_max must be between 0 and " + std::to_string(max_degree));
    auto params = default_audit_params();
    if (body.contains("params")) {
        const auto& jp = body.at("params");
        if (!jp.is_array() || jp.empty()) throw ApiError(400, "params: expected a non-empty array");
        params.clear();
        for (std::size_t i = 0; i < jp.size(); ++i) {
            const auto where = "params[" + std::to_string(i) + "]";
            if (!jp[i].is_object() || jp[i].size() != 2 || !jp[i].contains("p") || !jp[i].contains("q"))
                throw ApiError(400, where + ": expected {\"p\": .., \"q\": ..}");
            PqParams<Rational> P{exact_param(jp[i].at("p"), where + ".p"), exact_param(jp[i].at("q"), where + ".q"), {}};
            if (P.p <= 0 || P.q <= 0) throw ApiError(422, where + ": p and q must be positive");
            params.push_back(std::move(P));
        }
    }
    return to_json(audit_all(n_max, params));
}

Service::Service(ServiceConfig config) : config_(std::move(config)), store_(config_.store_root) {}

ApiResponse Service::curves(const ApiRequest& request, const std::string& name) const {
    if (!is_valid_document_name(name)) throw ApiError(400, "document names must match [A-Za-z0-9_-]{1,64}");
    if (request.method == "GET") {
        auto doc = store_.load(name);
        if (!doc) throw ApiError(404, "no document named '" + name + "'");
        return json_response(200, *doc);
    }
    if (request.method == "PUT") {
        const auto doc = parse_json_text(request.body);
        curve_from_document<double>(doc);
        const auto it = request.query.find("overwrite");
        const bool overwrite = it != request.query.end() && truthy(it->second);
        try {
            const bool created = store_.save(name, doc, overwrite);
            return json_response(created ? 201 : 200, doc);
        } catch (const DocumentExists& e) {
            throw ApiError(409, e.what());
        }
    }
    throw ApiError(405, "method not allowed");
}

ApiResponse Service::route(const ApiRequest& request) const {
    static const std::string curves_prefix = "/api/curves/";
    if (request.path == "/api/health") {
        if (request.method != "GET") throw ApiError(405, "method not allowed");
        return json_response(200, {{"status", "ok"}});
    }
    if (request.path.starts_with(curves_prefix)) return curves(request, request.path.substr(curves_prefix.size()));

    using Endpoint = json (*)(const json&);
    static const std::map<std::string, Endpoint> posts{
        {"/api/evaluate", &api_evaluate},
        {"/api/elevate", &api_elevate},
        {"/api/subdivide", &api_subdivide},
        {"/api/blossom", &api_blossom},
    };
    const bool is_audit = request.path == "/api/audit";
    const auto it = posts.find(request.path);
    if (it == posts.end() && !is_audit) throw ApiError(404, "no such endpoint");
    if (request.method != "POST") throw ApiError(405, "method not allowed");
    const auto body = parse_json_text(request.body);
    return json_response(200, is_audit ? api_audit(body, config_.max_audit_degree) : it->second(body));
}

ApiResponse Service::handle(const ApiRequest& request) const {
    ApiResponse response;
    if (request.method == "OPTIONS") {
        response.status = 204;
        response.content_type.clear();
    } else {
        try {
            response = route(request);
        } catch (const ApiError& e) {
            response = error_response(e.status(), e.what(), e.detail());
        } catch (const DocumentError& e) {
            response = error_response(400, e.what());
        } catch (const ParseError& e) {
            response = error_response(400, e.what());
        } catch (const InvalidDocumentName& e) {
            response = error_response(400, e.what());
        } catch (const json::exception& e) {
            response = error_response(400, e.what());
        } catch (const BlossomUndefined& e) {
            json conditions = json::array();
            for (auto c : e.validity().violated_conditions) conditions.push_back(to_string(c));
            response = error_response(422, e.what(), {{"violated_conditions", conditions}});
        } catch (const std::invalid_argument& e) {
            response = error_response(422, e.what());
        } catch (const std::domain_error& e) {
            response = error_response(422, e.what());
        } catch (const std::out_of_range& e) {
            response = error_response(422, e.what());
        } catch (const std::exception& e) {
            response = error_response(500, e.what());
        }
    }
    if (request.origin && is_local_origin(*request.origin)) {
        response.headers.emplace_back("Access-Control-Allow-Origin", *request.origin);
        response.headers.emplace_back("Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS");
        response.headers.emplace_back("Access-Control-Allow-Headers", "Content-Type");
        response.headers.emplace_back("Vary", "Origin");
    }
    return response;
}

void Service::install(httplib::Server& server) const {
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
        ApiRequest request{req.method, req.path, req.body, {}, std::nullopt};
        for (const auto& [k, v] : req.params) request.query.emplace(k, v);
        if (req.has_header("Origin")) request.origin = req.get_header_value("Origin");
        const auto response = handle(request);
        res.status = response.status;
        for (const auto& [k, v] : response.headers) res.set_header(k, v);
        if (!response.content_type.empty()) res.set_content(response.body, response.content_type);
    };
    const std::string pattern = R"(/api/.*)";
    server.Get(pattern, forward);
    server.Post(pattern, forward);
    server.Put(pattern, forward);
    server.Options(pattern, forward);
    if (config_.static_dir && !server.set_mount_point("/", config_.static_dir->string()))
        throw IoError("static directory '" + config_.static_dir->string() + "' does not exist");
}

}  // namespace pqbezier
