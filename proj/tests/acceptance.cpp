// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "conformance.hpp"
#include "httplib.h"
#include "pqbezier/audit.hpp"
#include "pqbezier/blossom.hpp"
#include "pqbezier/identities.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>

using namespace pqbezier;
using nlohmann::json;
using testutil::PR;
using testutil::R;
using testutil::rat;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    long checks = 0;

    void expect(bool cond, const std::string& what) {
        ++checks;
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

std::string str(const R& v) { return to_string(v); }

std::string where(int n, const PR& P) { return "n=" + std::to_string(n) + " p=" + str(P.p) + " q=" + str(P.q); }

std::vector<R> sample_ts() {
    std::vector<R> ts;
    for (int j = 0; j <= 10; ++j) ts.push_back(rat(j, 10));
    return ts;
}

std::vector<R> padded(const oracle::Poly& poly, int n) {
    std::vector<R> a;
    for (int k = 0; k <= n; ++k) a.push_back(poly.at(static_cast<std::size_t>(k)));
    return a;
}

std::vector<R> random_tuple(std::mt19937_64& rng, int m) {
    std::vector<R> u;
    for (int i = 0; i < m; ++i) u.push_back(oracle::random_rational(rng, 3, 9));
    return u;
}

BlossomForm<R, R> scalar_blossom(const std::vector<R>& a, const PR& P) {
    return blossom_from_polynomial(Polynomial<R>(a), P);
}

R blossom_at(const BlossomForm<R, R>& form, const std::vector<R>& u) {
    return blossom_evaluate(form, std::span<const R>(u));
}

Outcome partition_of_unity() {
    Outcome o;
    for (const auto& P : testutil::standard_params()) {
        const auto PD = to_double(P);
        for (int n = 0; n <= 10; ++n)
            for (const auto& t : sample_ts()) {
                const auto b = bernstein_basis_all(n, t, P);
                o.expect(std::accumulate(b.begin(), b.end(), R{0}) == 1, "exact sum != 1 at " + where(n, P) + " t=" + str(t));
                const auto bd = bernstein_basis_all(n, to_double(t), PD);
                const double residual = std::abs(std::accumulate(bd.begin(), bd.end(), 0.0) - 1.0);
                o.expect(residual < 1e-12, "float residual " + to_string(residual) + " at " + where(n, P));
            }
    }
    return o;
}

Outcome endpoint_interpolation() {
    Outcome o;
    std::mt19937_64 rng(101);
    for (const auto& P : testutil::standard_params())
        for (int n = 0; n <= 8; ++n)
            for (std::size_t dim = 1; dim <= 3; ++dim) {
                const auto c = testutil::random_curve(rng, n, dim, P);
                for (auto a : {Algorithm::direct, Algorithm::dc1, Algorithm::dc2}) {
                    o.expect(evaluate(c, R{0}, a) == c.control_points().front(), "S(0) != P_0 at " + where(n, P));
                    o.expect(evaluate(c, R{1}, a) == c.control_points().back(), "S(1) != P_n at " + where(n, P));
                }
            }
    return o;
}

Outcome algorithm_agreement() {
    Outcome o;
    std::mt19937_64 rng(202);
    const auto params = testutil::standard_params();
    for (int n = 1; n <= 5; ++n)
        for (int rep = 0; rep < 10; ++rep) {
            const auto& P = params[static_cast<std::size_t>(rep) % params.size()];
            const auto c = testutil::random_curve(rng, n, 2, P);
            const R t = oracle::random_rational(rng, 2, 9);
            const auto direct = evaluate(c, t, Algorithm::direct);
            for (std::size_t d = 0; d < 2; ++d) {
                const auto poly = oracle::curve_poly(testutil::coordinate(c.control_points(), d), P.p, P.q);
                o.expect(direct[d] == poly(t), "direct != oracle polynomial at " + where(n, P));
            }
            const R scale = oracle::power(P.p, oracle::tri(n));
            for (auto a : {Algorithm::dc1, Algorithm::dc2}) {
                o.expect(evaluate(c, t, a) == direct, std::string(to_string(a)) + " != direct at " + where(n, P));
                o.expect(intermediate_points(c, t, a).levels.back().front() == direct * scale,
                         std::string(to_string(a)) + " apex != p^{n(n-1)/2} S(t) at " + where(n, P));
            }
            std::vector<int> sigma(static_cast<std::size_t>(n));
            std::iota(sigma.begin(), sigma.end(), 1);
            int perms = 0;
            do {
                ++perms;
                const auto apex = intermediate_points(c, t, Algorithm::permuted, sigma).levels.back().front();
                o.expect(apex == direct * scale, "permuted apex differs at " + where(n, P));
                o.expect(evaluate_permuted(c, t, sigma) == direct, "permuted != direct at " + where(n, P));
            } while (std::next_permutation(sigma.begin(), sigma.end()));
            long factorial = 1;
            for (int i = 2; i <= n; ++i) factorial *= i;
            o.expect(perms == factorial, "wrong permutation count");
        }
    return o;
}

Outcome q_case_regression() {
    Outcome o;
    std::mt19937_64 rng(303);
    for (auto q : {rat(1, 2), rat(2, 3), rat(3)}) {
        const PR P{rat(1), q, {}};
        for (int n = 0; n <= 8; ++n) {
            for (const auto& t : sample_ts())
                for (int k = 0; k <= n; ++k)
                    o.expect(bernstein_basis(n, k, t, P) == oracle::q_basis(n, k, t, q), "basis at " + where(n, P));

            const auto c = testutil::random_curve(rng, n, 1, P);
            const auto values = testutil::coordinate(c.control_points(), 0);
            for (const auto& t : {rat(1, 3), rat(4, 5), rat(-1, 2)}) {
                const R want = oracle::q_de_casteljau(values, t, q);
                o.expect(evaluate(c, t, Algorithm::dc1)[0] == want, "dc1 at " + where(n, P));
                o.expect(evaluate(c, t, Algorithm::dc2)[0] == want, "dc2 at " + where(n, P));
                o.expect(evaluate(c, t)[0] == want, "direct at " + where(n, P));
            }

            if (n >= 1) {
                const auto a = padded(oracle::curve_poly(values, rat(1), q), n);
                const auto form = scalar_blossom(a, P);
                for (int rep = 0; rep < 3; ++rep) {
                    const auto u = random_tuple(rng, n);
                    o.expect(blossom_at(form, u) == oracle::blossom(a, u, rat(1), q), "blossom at " + where(n, P));
                }
                const auto dual = dual_control_points(form);
                for (int k = 0; k <= n; ++k) {
                    std::vector<R> u(static_cast<std::size_t>(n - k), R{0});
                    for (int i = 0; i < k; ++i) u.push_back(oracle::power(q, i));
                    o.expect(dual[k] == oracle::blossom(a, u, rat(1), q), "dual functional at " + where(n, P));
                    o.expect(dual[k] == values[k], "dual point != control point at " + where(n, P));
                }
                const R x = rat(3, 7), t = rat(-1, 4);
                o.expect(marsden_lhs(n, P, x, t) == oracle::q_marsden_rhs(n, x, t, q), "Marsden lhs at " + where(n, P));
                o.expect(marsden_rhs(n, P, x, t, MarsdenPrefactor::published) == oracle::q_marsden_rhs(n, x, t, q),
                         "Marsden rhs at " + where(n, P));
            }
            for (int i = 0; i <= n; ++i)
                o.expect(monomial_coefficients(n, i, P) == oracle::q_monomial_weights(n, i, q),
                         "monomial weights at " + where(n, P));
            const R r = oracle::random_unit(rng);
            const auto m = reparametrization_coefficients(n, r, P);
            for (int i = 0; i <= n; ++i)
                for (int k = 0; k <= i; ++k)
                    o.expect(m[i][k] == oracle::q_basis(i, k, r, q), "reparametrization at " + where(n, P));
        }
    }
    return o;
}

Outcome classical_regression() {
    Outcome o;
    std::mt19937_64 rng(404);
    const PR P{rat(1), rat(1), {}};
    for (int n = 0; n <= 8; ++n) {
        for (const auto& t : sample_ts())
            for (int k = 0; k <= n; ++k)
                o.expect(bernstein_basis(n, k, t, P) == oracle::classical_basis(n, k, t), "basis at " + where(n, P));
        const auto c = testutil::random_curve(rng, n, 1, P);
        const auto values = testutil::coordinate(c.control_points(), 0);
        for (const auto& t : {rat(1, 3), rat(5, 7), rat(3, 2)}) {
            const auto rows = oracle::classical_de_casteljau(values, t);
            for (auto a : {Algorithm::direct, Algorithm::dc1, Algorithm::dc2})
                o.expect(evaluate(c, t, a)[0] == rows.back()[0], "evaluation at " + where(n, P));
            const auto levels = intermediate_points(c, t, Algorithm::dc1).affine_levels();
            for (std::size_t r = 0; r < rows.size(); ++r)
                for (std::size_t i = 0; i < rows[r].size(); ++i)
                    o.expect(levels[r][i][0] == rows[r][i], "intermediate point at " + where(n, P));
        }
        if (n > 1) {
            const auto v = validate_params(n, P);
            o.expect(!v.ok && v.violated_conditions == std::vector{ParamCondition::p_eq_q},
                     "validate_params should report p_eq_q at " + where(n, P));
            bool threw = false;
            try {
                scalar_blossom(values, P);
            } catch (const BlossomUndefined& e) {
                threw = e.validity().violated_conditions == std::vector{ParamCondition::p_eq_q};
            }
            o.expect(threw, "blossom should be undefined at " + where(n, P));
        }
    }
    return o;
}

Outcome blossom_axioms() {
    Outcome o;
    std::mt19937_64 rng(505);
    for (const auto& P : testutil::standard_params())
        for (int n = 1; n <= 8; ++n) {
            const auto a = padded(oracle::curve_poly(testutil::coordinate(testutil::random_curve(rng, n, 1, P).control_points(), 0), P.p, P.q), n);
            const auto form = scalar_blossom(a, P);
            const Polynomial<R> poly(a);
            for (int rep = 0; rep < 20; ++rep) {
                auto u = random_tuple(rng, n);
                const R s = blossom_at(form, u);
                o.expect(s == oracle::blossom(a, u, P.p, P.q), "blossom != oracle at " + where(n, P));
                auto shuffled = u;
                std::shuffle(shuffled.begin(), shuffled.end(), rng);
                o.expect(blossom_at(form, shuffled) == s, "symmetry at " + where(n, P));
                const auto i = static_cast<std::size_t>(rep % n);
                const R alpha = oracle::random_rational(rng, 2, 5);
                const R other = oracle::random_rational(rng, 3, 9);
                auto v = u, w = u;
                v[i] = other;
                w[i] = (1 - alpha) * u[i] + alpha * other;
                o.expect(blossom_at(form, w) == (1 - alpha) * s + alpha * blossom_at(form, v),
                         "multiaffinity at " + where(n, P));
                const R t = oracle::random_rational(rng, 2, 7);
                auto diag = pq_diagonal(n, P);
                for (auto& x : diag) x *= t;
                o.expect(blossom_at(form, diag) == poly(t), "diagonal at " + where(n, P));
            }
        }
    return o;
}

Outcome dual_round_trip() {
    Outcome o;
    std::mt19937_64 rng(606);
    for (const auto& P : testutil::standard_params())
        for (int n = 0; n <= 8; ++n)
            for (int rep = 0; rep < 10; ++rep) {
                const auto c = testutil::random_curve(rng, n, 2, P);
                const auto form = blossom_from_polynomial(polynomial_from_curve(c), P);
                o.expect(dual_control_points(form) == c.control_points(), "round trip at " + where(n, P));
            }
    return o;
}

Outcome marsden(const AuditReport& report) {
    Outcome o;
    for (const auto& P : testutil::standard_params())
        for (int n = 1; n <= 6; ++n)
            for (int i = 0; i <= n; ++i)
                for (int j = 0; j <= n; ++j) {
                    const R x = rat(2 * i + 1, n + 2) - rat(1, 3);
                    const R t = rat(3 * j - 1, n + 3);
                    o.expect(marsden_residual(n, P, x, t) == 0, "nonzero residual at " + where(n, P));
                }
    const auto* e = report.find("marsden");
    o.expect(e != nullptr && e->verdict != Verdict::fail && e->verdict != Verdict::not_applicable,
             "audit has no Marsden verdict");
    if (e) o.detail = o.ok ? "audit verdict " + std::string(to_string(e->verdict)) : o.detail;
    return o;
}

Outcome monomial_representation() {
    Outcome o;
    for (const auto& P : testutil::standard_params())
        for (int n = 0; n <= 8; ++n)
            for (int i = 0; i <= n; ++i) {
                const auto w = monomial_coefficients(n, i, P);
                for (const auto& t : {rat(-1, 2), rat(1, 3), rat(2)}) {
                    const auto b = bernstein_basis_all(n, t, P);
                    R sum{0};
                    for (int k = 0; k <= n; ++k) sum += w[k] * b[k];
                    o.expect(sum == oracle::power(t, i), "t^i not reconstructed at " + where(n, P));
                }
            }
    return o;
}

Outcome reparametrization_and_subdivision() {
    Outcome o;
    std::mt19937_64 rng(707);
    for (const auto& P : testutil::standard_params())
        for (int n = 0; n <= 6; ++n)
            for (int rep = 0; rep < 5; ++rep) {
                const R r = oracle::random_unit(rng);
                const auto m = reparametrization_coefficients(n, r, P);
                const auto c = testutil::random_curve(rng, n, 2, P);
                const auto left = subdivide_left(c, r);
                for (const auto& t : {rat(0), rat(2, 7), rat(1, 2), rat(1), rat(-1, 3)}) {
                    const auto b = bernstein_basis_all(n, t, P);
                    for (int k = 0; k <= n; ++k) {
                        R sum{0};
                        for (int i = k; i <= n; ++i) sum += m[i][k] * b[i];
                        o.expect(sum == bernstein_basis(n, k, r * t, P), "expansion at " + where(n, P));
                    }
                    o.expect(evaluate(left, t) == evaluate(c, r * t), "left piece at " + where(n, P));
                }
            }
    return o;
}

Outcome degree_elevation(const AuditReport& report) {
    Outcome o;
    std::mt19937_64 rng(808);
    for (const auto& P : testutil::standard_params())
        for (int n = 0; n <= 6; ++n)
            for (int rep = 0; rep < 3; ++rep) {
                const auto c = testutil::random_curve(rng, n, 2, P);
                const auto e = degree_elevate(c);
                o.expect(e.degree() == n + 1, "degree");
                for (const auto& t : sample_ts()) o.expect(evaluate(e, t) == evaluate(c, t), "pointwise at " + where(n, P));
                o.expect(evaluate(e, rat(-3, 2)) == evaluate(c, rat(-3, 2)), "outside the unit interval at " + where(n, P));
            }
    const auto* entry = report.find("degree_elevation");
    o.expect(entry && entry->verdict == Verdict::pass_with_correction && entry->correction,
             "audit does not document the elevation correction");
    if (o.ok && entry) o.detail = *entry->correction;
    return o;
}

bool pure_power(const AuditEntry& e) {
    for (const auto& f : e.factors)
        if (f.q_exponent != 0 && f.q_exponent != f.p_exponent) return false;
    return !e.factors.empty();
}

Outcome auditor_findings(const AuditReport& report) {
    Outcome o;
    o.expect(!report.has_failures(), "audit reports a fail verdict");
    for (const char* id : {"elementary_symmetric_closed_form", "de_casteljau_first", "de_casteljau_second"}) {
        const auto* e = report.find(id);
        o.expect(e && e->verdict == Verdict::pass_with_correction, std::string(id) + " not pass_with_correction");
        o.expect(e && pure_power(*e), std::string(id) + " factor is not a pure p- or pq-power");
    }
    if (o.ok) {
        const auto* closed = report.find("elementary_symmetric_closed_form");
        const auto* apex = report.find("de_casteljau_first");
        o.detail = "closed form: " + *closed->correction + "; apex: " + *apex->correction;
    }
    return o;
}

Outcome recursive_blossom(const AuditReport& report) {
    Outcome o;
    std::mt19937_64 rng(909);
    auto params = testutil::standard_params();
    params.push_back(PR{rat(1), rat(3), {}});
    for (const auto& P : params)
        for (int n = 1; n <= 5; ++n)
            for (int rep = 0; rep < 5; ++rep) {
                const auto c = testutil::random_curve(rng, n, 1, P);
                const auto values = testutil::coordinate(c.control_points(), 0);
                const auto form = scalar_blossom(padded(oracle::curve_poly(values, P.p, P.q), n), P);
                const auto u = random_tuple(rng, n);
                const R q_value = recursive_blossom_evaluate<R, R>(values, u, P);
                auto scaled = u;
                for (auto& x : scaled) x *= oracle::power(P.p, n - 1);
                o.expect(q_value == blossom_at(form, scaled), "Q(u) != s(p^{n-1} u) at " + where(n, P));
                if (P.p == 1) o.expect(q_value == blossom_at(form, u), "Q(u) != s(u) at p = 1, " + where(n, P));
                o.expect(recursive_blossom_value<R, R>(values, u, P) == blossom_at(form, u),
                         "recursive_blossom_value at " + where(n, P));
            }
    const auto* e = report.find("recursive_blossom_scaling");
    o.expect(e && e->verdict == Verdict::pass_with_correction, "scaling relation not recorded in the audit");
    if (o.ok) o.detail = "scaling confirmed: " + *e->correction;
    return o;
}

Outcome service_conformance() {
    Outcome o;
    const auto store = std::filesystem::temp_directory_path() / "pqbezier_acceptance_store";
    std::filesystem::remove_all(store);
    Service service(ServiceConfig{store, std::nullopt, 6});
    httplib::Server server;
    service.install(server);
    const int port = server.bind_to_any_port("127.0.0.1");
    o.expect(port > 0, "could not bind a local port");
    if (port <= 0) return o;
    std::thread worker([&] { server.listen_after_bind(); });
    server.wait_until_ready();
    httplib::Client client("127.0.0.1", port);
    const auto files = conformance::corpus(PQBEZIER_GOLDEN_DIR);
    o.expect(!files.empty(), "empty golden corpus");
    for (const auto& file : files) {
        const auto golden = json::parse(read_text_file(file));
        const auto mismatch = conformance::check_case(golden, [&](const ApiRequest& r) {
            ApiResponse out;
            out.status = 599;
            if (auto res = client.Post(r.path, r.body, "application/json")) {
                out.status = res->status;
                out.body = res->body;
            }
            return out;
        });
        o.expect(!mismatch, file.filename().string() + ": " + (mismatch ? *mismatch : ""));
    }
    server.stop();
    worker.join();
    std::filesystem::remove_all(store);
    if (o.ok) o.detail = std::to_string(files.size()) + " golden requests over HTTP";
    return o;
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    const auto report = audit_all(4, default_audit_params());

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"partition of unity", partition_of_unity},
        {"endpoint interpolation", endpoint_interpolation},
        {"algorithm agreement", algorithm_agreement},
        {"q-case regression", q_case_regression},
        {"classical regression", classical_regression},
        {"blossom axioms", blossom_axioms},
        {"dual-functional round trip", dual_round_trip},
        {"Marsden identity", [&] { return marsden(report); }},
        {"monomial representation", monomial_representation},
        {"reparametrization and left subdivision", reparametrization_and_subdivision},
        {"degree elevation", [&] { return degree_elevation(report); }},
        {"auditor findings", [&] { return auditor_findings(report); }},
        {"recursive blossom", [&] { return recursive_blossom(report); }},
        {"service conformance", service_conformance},
    };

    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failures += !o.ok;
        std::printf("%s  %s (%ld checks)%s%s\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.checks,
                    o.detail.empty() ? "" : ": ", o.detail.c_str());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d of %zu criteria failed in %.1f s\n", failures, criteria.size(), seconds);
    return failures == 0 ? 0 : 1;
}
