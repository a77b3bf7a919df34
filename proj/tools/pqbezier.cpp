// pqbezier: evaluate, plot, elevate, subdivide and audit (p,q)-Bezier curves,
// or serve the JSON API.
//
// Exit codes: 0 success, 1 audit failures, 2 usage or input errors, 3 I/O errors.

#include "CLI11.hpp"
#include "httplib.h"
#include "pqbezier/audit.hpp"
#include "pqbezier/document.hpp"
#include "pqbezier/service.hpp"
#include "pqbezier/svg.hpp"

#include <csignal>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace pqbezier;

enum Exit { kOk = 0, kAuditFailed = 1, kUsage = 2, kIo = 3 };

struct CliConfig {
    std::string curve_path;
    std::string out_path;
    bool exact = false;
    std::vector<std::string> t_values;
    std::string algorithm = "direct";
    std::string sigma;
    std::string r;
    int samples = 200;
    bool show_polygon = false;
    std::optional<std::string> show_triangle;
    int n_max = 4;
    std::vector<std::string> p_values;
    std::vector<std::string> q_values;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string store_dir = "curves";
    std::string static_dir;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

template <Scalar T>
T parse_scalar(const std::string& text, const char* what) {
    try {
        if constexpr (is_exact_v<T>) {
            if (!is_rational_literal(text))
                throw UsageError(std::string(what) + ": '" + text + "' is not an integer or \"num/den\" (exact mode)");
            return parse_rational(text);
        } else {
            return parse_real(text);
        }
    } catch (const ParseError& e) {
        throw UsageError(std::string(what) + ": " + e.what());
    }
}

Algorithm parse_algorithm(const std::string& s) {
    for (auto a : {Algorithm::direct, Algorithm::dc1, Algorithm::dc2, Algorithm::permuted})
        if (s == to_string(a)) return a;
    throw UsageError("--algorithm must be one of direct, dc1, dc2, perm");
}

std::vector<int> parse_sigma(const std::string& text) {
    std::vector<int> sigma;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            sigma.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("--sigma must be a comma-separated list of integers");
        }
    }
    return sigma;
}

void emit(const CliConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty())
        std::cout << text;
    else
        write_text_file(cfg.out_path, text);
}

std::string format_point(const Point<double>& pt) {
    std::string s;
    for (std::size_t i = 0; i < pt.dimension(); ++i) s += (i ? " " : "") + to_string(pt[i]);
    return s;
}

std::string format_point(const Point<Rational>& pt) {
    std::string s;
    for (std::size_t i = 0; i < pt.dimension(); ++i) s += (i ? " " : "") + to_string(pt[i]);
    return s;
}

template <Scalar T>
int cmd_eval(const CliConfig& cfg) {
    if (cfg.t_values.empty()) throw UsageError("eval needs at least one --t");
    const auto algorithm = parse_algorithm(cfg.algorithm);
    std::vector<T> ts;
    for (const auto& s : cfg.t_values) ts.push_back(parse_scalar<T>(s, "--t"));
    const auto curve = load_curve<T>(cfg.curve_path);
    std::vector<int> sigma;
    if (algorithm == Algorithm::permuted) {
        if (cfg.sigma.empty()) throw UsageError("--algorithm perm needs --sigma");
        sigma = parse_sigma(cfg.sigma);
        check_permutation(sigma, curve.degree());
    } else if (!cfg.sigma.empty()) {
        throw UsageError("--sigma only applies to --algorithm perm");
    }
    std::string out;
    for (const auto& t : ts) {
        auto pt = algorithm == Algorithm::permuted ? evaluate_permuted(curve, t, sigma) : evaluate(curve, t, algorithm);
        out += format_point(pt) + "\n";
    }
    emit(cfg, out);
    return kOk;
}

template <Scalar T>
int cmd_plot(const CliConfig& cfg) {
    if (cfg.out_path.empty()) throw UsageError("plot needs --out");
    if (cfg.samples < 2) throw UsageError("--samples must be >= 2");
    const auto curve = to_double(load_curve<T>(cfg.curve_path));
    PlotOptions opt;
    opt.samples = cfg.samples;
    opt.show_polygon = cfg.show_polygon;
    if (cfg.show_triangle) opt.triangle_t = to_double(parse_scalar<T>(*cfg.show_triangle, "--show-triangle"));
    write_text_file(cfg.out_path, render_svg(curve, opt));
    return kOk;
}

template <Scalar T>
int cmd_elevate(const CliConfig& cfg) {
    const auto curve = load_curve<T>(cfg.curve_path);
    emit(cfg, document_from_curve(degree_elevate(curve)).dump(2) + "\n");
    return kOk;
}

template <Scalar T>
int cmd_subdivide(const CliConfig& cfg) {
    if (cfg.r.empty()) throw UsageError("subdivide needs --r");
    const T r = parse_scalar<T>(cfg.r, "--r");
    const auto curve = load_curve<T>(cfg.curve_path);
    const auto result = subdivide(curve, r);
    auto right = nlohmann::json::array();
    for (const auto& pt : result.right_samples) right.push_back(point_to_json(pt));
    nlohmann::json out{{"left", document_from_curve(result.left)}, {"right_samples", right}};
    emit(cfg, out.dump(2) + "\n");
    return kOk;
}

int cmd_audit(const CliConfig& cfg) {
    if (cfg.p_values.size() != cfg.q_values.size()) throw UsageError("--p and --q must be given in pairs");
    if (cfg.n_max < 0) throw UsageError("--n-max must be >= 0");
    auto params = default_audit_params();
    if (!cfg.p_values.empty()) {
        params.clear();
        for (std::size_t i = 0; i < cfg.p_values.size(); ++i) {
            for (const auto* v : {&cfg.p_values[i], &cfg.q_values[i]})
                if (!is_rational_literal(*v)) {
                    (void)parse_real(*v);  // malformed input reports as such
                    throw UsageError("audit requires exact arithmetic; '" + *v + "' is a decimal, use \"num/den\"");
                }
            PqParams<Rational> P{parse_rational(cfg.p_values[i]), parse_rational(cfg.q_values[i]), {}};
            if (P.p <= 0 || P.q <= 0) throw UsageError("audit parameters need p > 0 and q > 0");
            params.push_back(std::move(P));
        }
    }
    const auto report = audit_all(cfg.n_max, params);
    if (!cfg.out_path.empty()) write_text_file(cfg.out_path, to_json(report).dump(2) + "\n");
    std::cout << to_text(report);
    return report.has_failures() ? kAuditFailed : kOk;
}

httplib::Server* g_server = nullptr;

extern "C" void stop_server(int) {
    if (g_server) g_server->stop();
}

int cmd_serve(const CliConfig& cfg) {
    ServiceConfig sc;
    sc.store_root = cfg.store_dir;
    if (!cfg.static_dir.empty()) sc.static_dir = cfg.static_dir;
    Service service(sc);
    httplib::Server server;
    service.install(server);
    if (cfg.port == 0) {
        const int port = server.bind_to_any_port(cfg.host);
        if (port < 0) throw IoError("cannot bind " + cfg.host);
        std::cout << "listening on http://" << cfg.host << ":" << port << std::endl;
    } else {
        if (!server.bind_to_port(cfg.host, cfg.port))
            throw IoError("cannot bind " + cfg.host + ":" + std::to_string(cfg.port));
        std::cout << "listening on http://" << cfg.host << ":" << cfg.port << std::endl;
    }
    g_server = &server;
    std::signal(SIGINT, stop_server);
    std::signal(SIGTERM, stop_server);
    server.listen_after_bind();
    g_server = nullptr;
    return kOk;
}

template <class F>
int dispatch_mode(const CliConfig& cfg, F&& f) {
    return cfg.exact ? f(Rational{}) : f(0.0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"(p,q)-Bezier curves: evaluate, plot, elevate, subdivide, audit, serve"};
    app.require_subcommand(1, 1);
    CliConfig cfg;

    auto add_curve = [&](CLI::App* sub) {
        sub->add_option("--curve", cfg.curve_path, "Curve document (JSON)")->required();
    };
    auto add_exact = [&](CLI::App* sub) {
        sub->add_flag("--exact", cfg.exact, "Rational arithmetic; decimals are rejected");
    };

    auto* eval = app.add_subcommand("eval", "Evaluate a curve at parameter values");
    add_curve(eval);
    add_exact(eval);
    eval->add_option("--t", cfg.t_values, "Parameter value (repeatable)")->required();
    eval->add_option("--algorithm", cfg.algorithm, "direct, dc1, dc2 or perm");
    eval->add_option("--sigma", cfg.sigma, "Permutation for perm, e.g. 2,1");
    eval->add_option("--out", cfg.out_path, "Output file");

    auto* plot = app.add_subcommand("plot", "Write an SVG plot");
    add_curve(plot);
    add_exact(plot);
    plot->add_option("--out", cfg.out_path, "SVG file")->required();
    plot->add_option("--samples", cfg.samples, "Curve samples (>= 2)");
    plot->add_flag("--show-polygon", cfg.show_polygon, "Draw the control polygon");
    plot->add_option("--show-triangle", cfg.show_triangle, "Draw the de Casteljau triangle at T");

    auto* elevate = app.add_subcommand("elevate", "Raise the degree by one");
    add_curve(elevate);
    add_exact(elevate);
    elevate->add_option("--out", cfg.out_path, "Output document");

    auto* subdiv = app.add_subcommand("subdivide", "Split at r: exact left piece, sampled right piece");
    add_curve(subdiv);
    add_exact(subdiv);
    subdiv->add_option("--r", cfg.r, "Split parameter in (0,1)")->required();
    subdiv->add_option("--out", cfg.out_path, "Output file");

    auto* audit = app.add_subcommand("audit", "Check the published identities in exact arithmetic");
    audit->add_option("--n-max", cfg.n_max, "Largest degree");
    audit->add_option("--p", cfg.p_values, "p values (repeatable, paired with --q)");
    audit->add_option("--q", cfg.q_values, "q values (repeatable, paired with --p)");
    audit->add_flag("--exact", cfg.exact, "Accepted for symmetry; the audit is always exact");
    audit->add_option("--out", cfg.out_path, "Machine-readable report (JSON)");

    auto* serve = app.add_subcommand("serve", "Run the HTTP API");
    serve->add_option("--host", cfg.host, "Bind address");
    serve->add_option("--port", cfg.port, "Port (0 picks a free one)");
    serve->add_option("--store", cfg.store_dir, "Curve document directory");
    serve->add_option("--static", cfg.static_dir, "Static file directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*eval) return dispatch_mode(cfg, [&](auto tag) { return cmd_eval<decltype(tag)>(cfg); });
        if (*plot) return dispatch_mode(cfg, [&](auto tag) { return cmd_plot<decltype(tag)>(cfg); });
        if (*elevate) return dispatch_mode(cfg, [&](auto tag) { return cmd_elevate<decltype(tag)>(cfg); });
        if (*subdiv) return dispatch_mode(cfg, [&](auto tag) { return cmd_subdivide<decltype(tag)>(cfg); });
        if (*audit) return cmd_audit(cfg);
        if (*serve) return cmd_serve(cfg);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
