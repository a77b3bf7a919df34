#include "pqbezier/audit.hpp"

#include "pqbezier/blossom.hpp"
#include "pqbezier/curve.hpp"
#include "pqbezier/identities.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

namespace pqbezier {

namespace {

using R = Rational;
using Params = PqParams<R>;

R rat(long num, long den = 1) { return R(num, den); }

// Where a relation was observed to break.
struct Probe {
    std::size_t params_index = 0;
    std::optional<R> t;
    std::optional<R> x;
    std::optional<R> r;
};

struct Instance {
    int n = 0;
    std::optional<int> k;
    bool applicable = true;
    // First probe violating "published form times p^a q^b", or nullopt if it holds.
    std::function<std::optional<Probe>(int a, int b)> check;
};

using Law = std::function<std::pair<int, int>(int n, std::optional<int> k)>;

struct IdentitySpec {
    std::string id;
    std::function<std::vector<Instance>(int n_max, std::span<const Params>)> instances;
    Law law;
    std::string law_description;
};

// lhs == p^a q^b * rhs
struct Sample {
    R lhs;
    R rhs;
    Probe probe;
};

Instance value_instance(int n, std::optional<int> k, std::span<const Params> params_list,
                        const std::function<std::vector<Sample>(const Params&)>& sampler,
                        const std::function<bool(const Params&)>& applicable = {}) {
    std::vector<std::vector<Sample>> per_params;
    bool any = false;
    for (std::size_t pi = 0; pi < params_list.size(); ++pi) {
        const auto& P = params_list[pi];
        if (applicable && !applicable(P)) {
            per_params.emplace_back();
            continue;
        }
        auto samples = sampler(P);
        for (auto& s : samples) s.probe.params_index = pi;
        per_params.push_back(std::move(samples));
        any = true;
    }
    Instance inst;
    inst.n = n;
    inst.k = k;
    inst.applicable = any;
    std::vector<Params> params(params_list.begin(), params_list.end());
    inst.check = [per_params = std::move(per_params), params = std::move(params)](int a, int b) -> std::optional<Probe> {
        for (std::size_t pi = 0; pi < per_params.size(); ++pi) {
            if (per_params[pi].empty()) continue;
            const R factor = ipow(params[pi].p, a) * ipow(params[pi].q, b);
            for (const auto& s : per_params[pi])
                if (s.lhs != factor * s.rhs) return s.probe;
        }
        return std::nullopt;
    };
    return inst;
}

const std::vector<R>& t_samples() {
    static const std::vector<R> ts{rat(0), rat(1, 3), rat(1, 2), rat(3, 4), rat(1), rat(-2, 5), rat(7, 3)};
    return ts;
}

const std::vector<R>& x_samples() {
    static const std::vector<R> xs{rat(2, 7), rat(-1, 2), rat(5, 3), rat(1, 5)};
    return xs;
}

const std::vector<R>& r_samples() {
    static const std::vector<R> rs{rat(1, 2), rat(2, 3), rat(1, 7)};
    return rs;
}

// Deterministic, sign-mixed scalar control points for a degree-n probe curve.
std::vector<Point<R>> probe_points(int n, int variant) {
    std::vector<Point<R>> pts;
    for (int i = 0; i <= n; ++i) {
        const long num = static_cast<long>((i * i * (variant + 2) + 3 * i + 1 + variant) % 11) - 5;
        pts.push_back(Point<R>{rat(num, 1 + (i + variant) % 4)});
    }
    return pts;
}

std::vector<std::vector<R>> probe_arguments(int n) {
    std::vector<std::vector<R>> tuples;
    for (int v = 0; v < 3; ++v) {
        std::vector<R> u;
        for (int i = 0; i < n; ++i) u.push_back(rat(((i + 1) * (v + 2)) % 7 - 3, 2 + (i + v) % 3));
        tuples.push_back(std::move(u));
    }
    return tuples;
}

bool blossom_ok(int n, const Params& P) { return validate_params(n, P).ok; }

// ---------------------------------------------------------------------------
// identity definitions

IdentitySpec partition_of_unity() {
    return {
        "partition_of_unity",
        [](int n_max, std::span<const Params> pl) {
            std::vector<Instance> out;
            for (int n = 0; n <= n_max; ++n)
                out.push_back(value_instance(n, std::nullopt, pl, [n](const Params& P) {
                    std::vector<Sample> s;
                    for (const auto& t : t_samples()) {
                        R sum{0};
                        for (const auto& b : bernstein_basis_all(n, t, P)) sum += b;
                        s.push_back({R{1}, sum, {0, t, {}, {}}});
                    }
                    return s;
                }));
            return out;
        },
        [](int, std::optional<int>) { return std::pair{0, 0}; },
        "",
    };
}

IdentitySpec degree_relation() {
    return {
        "degree_relation",
        [](int n_max, std::span<const Params> pl) {
            std::vector<Instance> out;
            for (int n = 0; n <= n_max; ++n)
                for (int k = 0; k <= n; ++k)
                    out.push_back(value_instance(n, k, pl, [n, k](const Params& P) {
                        const R whole = pq_integer(n + 1, P);
                        const R alpha = ipow(P.p, k - n) * pq_integer(n + 1 - k, P) / whole;
                        const R beta = ipow(P.p, -n) * (R{1} - ipow(P.p, k + 1) * pq_integer(n - k, P) / whole);
                        std::vector<Sample> s;
                        for (const auto& t : t_samples()) {
                            const R rhs = alpha * bernstein_basis(n + 1, k, t, P) +
                                          beta * bernstein_basis(n + 1, k + 1, t, P);
                            s.push_back({bernstein_basis(n, k, t, P), rhs, {0, t, {}, {}}});
                        }
                        return s;
                    }));
            return out;
        },
        [](int n, std::optional<int>) { return std::pair{n, 0}; },
        "multiply the right-hand side by p^n",
    };
}

IdentitySpec degree_elevation() {
    return {
        "degree_elevation",
        [](int n_max, std::span<const Params> pl) {
            std::vector<Instance> out;
            for (int n = 0; n <= n_max; ++n)
                out.push_back(value_instance(n, std::nullopt, pl, [n](const Params& P) {
                    std::vector<Sample> s;
                    for (int variant = 0; variant < 2; ++variant) {
                        PqBezierCurve<R> curve(probe_points(n, variant), P);
                        // Published points carry an extra 1/p^n.
                        auto elevated = degree_elevate(curve).control_points();
                        for (auto& pt : elevated) pt /= ipow(P.p, n);
                        PqBezierCurve<R> published(std::move(elevated), P);
                        for (const auto& t : t_samples())
                            s.push_back({evaluate(curve, t)[0], evaluate(published, t)[0], {0, t, {}, {}}});
                    }
                    return s;
                }));
            return out;
        },
        [](int n, std::optional<int>) { return std::pair{n, 0}; },
        "elevated points are the bracketed combination itself, without the 1/p^n",
    };
}

IdentitySpec de_casteljau(const std::string& id, Algorithm algorithm) {
    return {
        id,
        [algorithm](int n_max, std::span<const Params> pl) {
            std::vector<Instance> out;
            for (int n = 1; n <= n_max; ++n)
                out.push_back(value_instance(n, std::nullopt, pl, [n, algorithm](const Params& P) {
                    std::vector<Sample> s;
                    PqBezierCurve<R> curve(probe_points(n, 1), P);
                    std::vector<int> sigma(static_cast<std::size_t>(n));
                    for (int i = 0; i < n; ++i) sigma[i] = i + 1;
                    for (const auto& t : t_samples()) {
                        const R direct = evaluate(curve, t)[0];
                        if (algorithm == Algorithm::permuted) {
                            do {
                                auto tri = intermediate_points(curve, t, algorithm, sigma);
                                s.push_back({tri.levels.back().front()[0], direct, {0, t, {}, {}}});
                            } while (std::next_permutation(sigma.begin(), sigma.end()));
                        } else {
                            auto tri = intermediate_points(curve, t, algorithm);
                            s.push_back({tri.levels.back().front()[0], direct, {0, t, {}, {}}});
                        }
                    }
                    return s;
                }));
            return out;
        },
        [](int n, std::optional<int>) { return std::pair{triangular(n), 0}; },
        "apex equals p^{n(n-1)/2} S(t); divide the apex by p^{n(n-1)/2}",
    };
}

IdentitySpec elementary_symmetric_closed_form() {
    return {
        "elementary_symmetric_closed_form",
        [](int n_max, std::span<const Params> pl) {
            std::vector<Instance> out;
            for (int n = 1; n <= n_max; ++n)
                for (int k = 1; k <= n; ++k)
                    out.push_back(value_instance(n, k, pl, [n, k](const Params& P) {
                        auto diag = pq_diagonal(n, P);
                        const R expanded = elementary_symmetric<R>(diag, k);
                        const R published = ipow(P.p, triangular(n - k)) * ipow(P.q, triangular(k)) *
                                            pq_binomial(n, k, P);
                        return std::vector<Sample>{{expanded, published, {}}};
                    }));
            return out;
        },
        [](int n, std::optional<int> k) {
            return std::pair{triangular(*k) - triangular(n - *k), 0};
        },
        "phi_{n,k}(p^{n-1}, ..., q^{n-1}) = (pq)^{k(k-1)/2} [n k]_{p,q}",
    };
}

IdentitySpec cubic_blossom_table() {
    return {
        "cubic_blossom_table",
        [](int n_max, std::span<const Params> pl) {
            std::vector<Instance> out;
            if (n_max < 3) return out;
            for (int k = 0; k <= 3; ++k)
                out.push_back(value_instance(3, k, pl, [k](const Params& P) {
                    std::vector<R> mono(4, R{0});
                    mono[k] = R{1};
                    auto form = blossom_from_polynomial(Polynomial<R>(mono), P);
                    const R bracket = P.p * P.p + P.p * P.q + P.q * P.q;
                    std::vector<Sample> s;
                    for (const auto& u : probe_arguments(3)) {
                        const R phi = elementary_symmetric<R>(u, k);
                        R published;
                        switch (k) {
                            case 0: published = R{1} / ipow(P.p, 3); break;
                            case 1: published = phi / (P.p * bracket); break;
                            case 2: published = phi / (P.q * bracket); break;
                            default: published = phi / ipow(P.q, 3); break;
                        }
                        s.push_back({blossom_evaluate(form, std::span<const R>(u)), published, {}});
                    }
                    return s;
                }, [](const Params& P) { return blossom_ok(3, P); }));
            return out;
        },
        [](int, std::optional<int> k) { return std::pair{3 - 2 * *k, 0}; },
        "the blossom of t^k is phi_{3,k}(u)/phi_{3,k}(p^2, pq, q^2); each table entry needs a factor p^{3-2k}",
    };
}

IdentitySpec marsden() {
    return {
        "marsden",
        [](int n_max, std::span<const Params> pl) {
            std::vector<Instance> out;
            for (int n = 1; n <= n_max; ++n)
                for (int j = 0; j <= n; ++j)
                    out.push_back(value_instance(n, j, pl, [n, j](const Params& P) {
                        std::vector<Sample> s;
                        for (const auto& x : x_samples()) {
                            // Bernstein coefficients of the left-hand side, via blossom and dual functionals.
                            std::vector<R> coeffs{R{1}};
                            for (int i = 1; i <= n; ++i) {
                                const R c0 = ipow(P.p, i - 1) * x;
                                const R c1 = -ipow(P.q, i - 1);
                                std::vector<R> next(coeffs.size() + 1, R{0});
                                for (std::size_t m = 0; m < coeffs.size(); ++m) {
                                    next[m] += coeffs[m] * c0;
                                    next[m + 1] += coeffs[m] * c1;
                                }
                                coeffs = std::move(next);
                            }
                            auto duals = dual_control_points(blossom_from_polynomial(Polynomial<R>(coeffs), P));
                            s.push_back({duals[j], marsden_coefficient(n, j, P, x, MarsdenPrefactor::published),
                                         {0, {}, x, {}}});
                        }
                        return s;
                    }, [n](const Params& P) { return blossom_ok(n, P); }));
            return out;
        },
        [](int n, std::optional<int> j) { return std::pair{(n - 1) * (n - 2 * *j) / 2, 0}; },
        "term j needs an extra factor p^{(n-1)(n-2j)/2} (binomial index read as j)",
    };
}

IdentitySpec monomial_representation() {
    return {
        "monomial_representation",
        [](int n_max, std::span<const Params> pl) {
            std::vector<Instance> out;
            for (int n = 0; n <= n_max; ++n)
                for (int i = 0; i <= n; ++i)
                    out.push_back(value_instance(n, i, pl, [n, i](const Params& P) {
                        auto w = monomial_coefficients(n, i, P);
                        std::vector<Sample> s;
                        for (const auto& t : t_samples()) {
                            auto b = bernstein_basis_all(n, t, P);
                            R sum{0};
                            for (int k = 0; k <= n; ++k) sum += w[k] * b[k];
                            s.push_back({ipow(t, i), sum, {0, t, {}, {}}});
                        }
                        return s;
                    }));
            return out;
        },
        [](int, std::optional<int>) { return std::pair{0, 0}; },
        "",
    };
}

IdentitySpec reparametrization() {
    return {
        "reparametrization",
        [](int n_max, std::span<const Params> pl) {
            std::vector<Instance> out;
            for (int n = 0; n <= n_max; ++n)
                for (int k = 0; k <= n; ++k)
                    out.push_back(value_instance(n, k, pl, [n, k](const Params& P) {
                        std::vector<Sample> s;
                        for (const auto& r : r_samples()) {
                            auto m = reparametrization_coefficients(n, r, P);
                            for (const auto& t : t_samples()) {
                                auto b = bernstein_basis_all(n, t, P);
                                R sum{0};
                                for (int i = k; i <= n; ++i) sum += m[i][k] * b[i];
                                s.push_back({bernstein_basis(n, k, r * t, P), sum, {0, t, {}, r}});
                            }
                        }
                        return s;
                    }));
            return out;
        },
        [](int, std::optional<int>) { return std::pair{0, 0}; },
        "",
    };
}

// Q_0^n(u) of the triangular blossom recurrence against s(p^a q^b u).
IdentitySpec recursive_blossom_scaling() {
    return {
        "recursive_blossom_scaling",
        [](int n_max, std::span<const Params> pl) {
            std::vector<Instance> out;
            for (int n = 1; n <= n_max; ++n) {
                struct Case {
                    std::size_t params_index;
                    BlossomForm<R, R> form;
                    std::vector<R> u;
                    R recursive;
                };
                std::vector<Case> cases;
                for (std::size_t pi = 0; pi < pl.size(); ++pi) {
                    const auto& P = pl[pi];
                    if (!blossom_ok(n, P)) continue;
                    PqBezierCurve<R> curve(probe_points(n, 2), P);
                    auto poly = polynomial_from_curve(curve);
                    std::vector<R> scalar_coeffs;
                    for (const auto& c : poly.coefficients()) scalar_coeffs.push_back(c[0]);
                    auto form = blossom_from_polynomial(Polynomial<R>(scalar_coeffs), P);
                    std::vector<R> controls;
                    for (const auto& pt : curve.control_points()) controls.push_back(pt[0]);
                    for (auto& u : probe_arguments(n)) {
                        R q0 = recursive_blossom_evaluate<R, R>(controls, u, P);
                        cases.push_back({pi, form, std::move(u), std::move(q0)});
                    }
                }
                Instance inst;
                inst.n = n;
                inst.applicable = !cases.empty();
                std::vector<Params> params(pl.begin(), pl.end());
                inst.check = [cases = std::move(cases), params = std::move(params)](int a, int b) -> std::optional<Probe> {
                    for (const auto& c : cases) {
                        const auto& P = params[c.params_index];
                        const R scale = ipow(P.p, a) * ipow(P.q, b);
                        std::vector<R> scaled = c.u;
                        for (auto& v : scaled) v *= scale;
                        if (c.recursive != blossom_evaluate(c.form, std::span<const R>(scaled)))
                            return Probe{c.params_index, {}, {}, {}};
                    }
                    return std::nullopt;
                };
                out.push_back(std::move(inst));
            }
            return out;
        },
        [](int n, std::optional<int>) { return std::pair{n - 1, 0}; },
        "the recurrence apex is the blossom at scaled arguments: Q_0^n(u) = s(p^{n-1} u)",
    };
}

std::vector<IdentitySpec> all_specs() {
    std::vector<IdentitySpec> specs{
        cubic_blossom_table(),
        de_casteljau("de_casteljau_first", Algorithm::dc1),
        de_casteljau("de_casteljau_permuted", Algorithm::permuted),
        de_casteljau("de_casteljau_second", Algorithm::dc2),
        degree_elevation(),
        degree_relation(),
        elementary_symmetric_closed_form(),
        marsden(),
        monomial_representation(),
        partition_of_unity(),
        recursive_blossom_scaling(),
        reparametrization(),
    };
    std::sort(specs.begin(), specs.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return specs;
}

// Candidates ordered by |a|+|b|, then |a|, then a, then b.
std::optional<std::pair<int, int>> fit_monomial(const Instance& inst) {
    const int bound = std::max(1, inst.n * inst.n);
    std::vector<std::pair<int, int>> candidates;
    for (int a = -bound; a <= bound; ++a)
        for (int b = -bound; b <= bound; ++b) candidates.emplace_back(a, b);
    std::sort(candidates.begin(), candidates.end(), [](auto l, auto r) {
        auto key = [](std::pair<int, int> c) {
            return std::tuple{std::abs(c.first) + std::abs(c.second), std::abs(c.first), c.first, c.second};
        };
        return key(l) < key(r);
    });
    for (auto [a, b] : candidates)
        if (!inst.check(a, b)) return std::pair{a, b};
    return std::nullopt;
}

AuditEntry run_spec(const IdentitySpec& spec, int n_max, std::span<const Params> params_list) {
    AuditEntry entry;
    entry.identity_id = spec.id;
    auto instances = spec.instances(n_max, params_list);
    std::sort(instances.begin(), instances.end(), [](const Instance& a, const Instance& b) {
        return std::pair{a.n, a.k.value_or(-1)} < std::pair{b.n, b.k.value_or(-1)};
    });

    bool first_range = true;
    bool any_failure = false;
    bool any_correction = false;
    bool matches_law = true;
    for (const auto& inst : instances) {
        if (!inst.applicable) {
            ++entry.not_applicable;
            continue;
        }
        ++entry.instances;
        if (first_range) {
            entry.degree_min = entry.degree_max = inst.n;
            first_range = false;
        }
        entry.degree_min = std::min(entry.degree_min, inst.n);
        entry.degree_max = std::max(entry.degree_max, inst.n);

        auto probe = inst.check(0, 0);
        std::pair<int, int> fitted{0, 0};
        if (probe) {
            if (!entry.witness) {
                const auto& P = params_list[probe->params_index];
                entry.witness = Witness{inst.n, inst.k, P.p, P.q, probe->t, probe->x, probe->r};
            }
            auto fit = fit_monomial(inst);
            if (!fit) {
                any_failure = true;
                matches_law = false;
                continue;
            }
            fitted = *fit;
            if (fitted != std::pair{0, 0}) {
                any_correction = true;
                entry.factors.push_back({inst.n, inst.k, fitted.first, fitted.second});
            }
        }
        if (fitted != spec.law(inst.n, inst.k)) matches_law = false;
    }

    if (entry.instances == 0) {
        entry.verdict = Verdict::not_applicable;
    } else if (any_failure) {
        entry.verdict = Verdict::fail;
    } else if (any_correction) {
        entry.verdict = Verdict::pass_with_correction;
        entry.correction = matches_law ? spec.law_description
                                       : std::string("per-instance monomial factors (see factors)");
    } else {
        entry.verdict = Verdict::pass_as_printed;
    }
    return entry;
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass_as_printed: return "pass_as_printed";
        case Verdict::pass_with_correction: return "pass_with_correction";
        case Verdict::fail: return "fail";
        case Verdict::not_applicable: return "not_applicable";
    }
    return "?";
}

Verdict verdict_from_string(const std::string& s) {
    for (auto v : {Verdict::pass_as_printed, Verdict::pass_with_correction, Verdict::fail, Verdict::not_applicable})
        if (s == to_string(v)) return v;
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

const AuditEntry* AuditReport::find(const std::string& id) const {
    for (const auto& e : entries)
        if (e.identity_id == id) return &e;
    return nullptr;
}

bool AuditReport::has_failures() const {
    return std::any_of(entries.begin(), entries.end(), [](const auto& e) { return e.verdict == Verdict::fail; });
}

std::vector<PqParams<Rational>> default_audit_params() {
    return {
        {rat(2), rat(1), {}},
        {rat(3), rat(2), {}},
        {rat(3, 2), rat(1, 2), {}},
        {rat(1), rat(1, 2), {}},
        {rat(5, 4), rat(3, 4), {}},
    };
}

std::vector<std::string> audit_identity_ids() {
    std::vector<std::string> ids;
    for (const auto& s : all_specs()) ids.push_back(s.id);
    return ids;
}

AuditEntry audit_identity(const std::string& identity_id, int n_max, std::span<const PqParams<Rational>> params_list) {
    for (const auto& spec : all_specs())
        if (spec.id == identity_id) return run_spec(spec, n_max, params_list);
    throw std::invalid_argument("unknown identity '" + identity_id + "'");
}

AuditReport audit_all(int n_max, std::span<const PqParams<Rational>> params_list) {
    if (n_max < 0) throw std::invalid_argument("audit_all: n_max must be >= 0");
    if (params_list.empty()) throw std::invalid_argument("audit_all: empty parameter list");
    AuditReport report;
    report.n_max = n_max;
    report.params.assign(params_list.begin(), params_list.end());
    for (const auto& spec : all_specs()) report.entries.push_back(run_spec(spec, n_max, params_list));
    return report;
}

void audit_all(int, std::span<const PqParams<double>>) { throw AuditModeError(); }

// ---------------------------------------------------------------------------
// serialization

namespace {

nlohmann::json opt_rational(const std::optional<Rational>& v) {
    return v ? nlohmann::json(to_string(*v)) : nlohmann::json(nullptr);
}

std::optional<Rational> opt_rational(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return parse_rational(j.at(key).get<std::string>());
}

std::optional<int> opt_int(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<int>();
}

}  // namespace

nlohmann::json to_json(const AuditReport& report) {
    nlohmann::json params = nlohmann::json::array();
    for (const auto& P : report.params) params.push_back({{"p", to_string(P.p)}, {"q", to_string(P.q)}});
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : report.entries) {
        nlohmann::json factors = nlohmann::json::array();
        for (const auto& f : e.factors)
            factors.push_back({{"n", f.n},
                               {"k", f.k ? nlohmann::json(*f.k) : nlohmann::json(nullptr)},
                               {"p_exponent", f.p_exponent},
                               {"q_exponent", f.q_exponent}});
        nlohmann::json witness = nullptr;
        if (e.witness)
            witness = {{"n", e.witness->n},
                       {"k", e.witness->k ? nlohmann::json(*e.witness->k) : nlohmann::json(nullptr)},
                       {"p", to_string(e.witness->p)},
                       {"q", to_string(e.witness->q)},
                       {"t", opt_rational(e.witness->t)},
                       {"x", opt_rational(e.witness->x)},
                       {"r", opt_rational(e.witness->r)}};
        entries.push_back({{"identity_id", e.identity_id},
                           {"degree_range", {e.degree_min, e.degree_max}},
                           {"verdict", to_string(e.verdict)},
                           {"correction", e.correction ? nlohmann::json(*e.correction) : nlohmann::json(nullptr)},
                           {"witness", witness},
                           {"factors", factors},
                           {"instances", e.instances},
                           {"not_applicable", e.not_applicable}});
    }
    return {{"n_max", report.n_max}, {"params", params}, {"entries", entries}};
}

AuditReport audit_report_from_json(const nlohmann::json& j) {
    AuditReport report;
    report.n_max = j.at("n_max").get<int>();
    for (const auto& p : j.at("params"))
        report.params.push_back({parse_rational(p.at("p").get<std::string>()),
                                 parse_rational(p.at("q").get<std::string>()), {}});
    for (const auto& je : j.at("entries")) {
        AuditEntry e;
        e.identity_id = je.at("identity_id").get<std::string>();
        e.degree_min = je.at("degree_range").at(0).get<int>();
        e.degree_max = je.at("degree_range").at(1).get<int>();
        e.verdict = verdict_from_string(je.at("verdict").get<std::string>());
        if (!je.at("correction").is_null()) e.correction = je.at("correction").get<std::string>();
        if (!je.at("witness").is_null()) {
            const auto& w = je.at("witness");
            e.witness = Witness{w.at("n").get<int>(),
                                opt_int(w, "k"),
                                parse_rational(w.at("p").get<std::string>()),
                                parse_rational(w.at("q").get<std::string>()),
                                opt_rational(w, "t"),
                                opt_rational(w, "x"),
                                opt_rational(w, "r")};
        }
        for (const auto& f : je.at("factors"))
            e.factors.push_back({f.at("n").get<int>(), opt_int(f, "k"), f.at("p_exponent").get<int>(),
                                 f.at("q_exponent").get<int>()});
        e.instances = je.at("instances").get<int>();
        e.not_applicable = je.at("not_applicable").get<int>();
        report.entries.push_back(std::move(e));
    }
    return report;
}

std::string to_text(const AuditReport& report) {
    std::ostringstream out;
    out << "audit n_max=" << report.n_max << " params=";
    for (std::size_t i = 0; i < report.params.size(); ++i)
        out << (i ? " " : "") << "(" << to_string(report.params[i].p) << "," << to_string(report.params[i].q) << ")";
    out << "\n";
    std::size_t width = 0;
    for (const auto& e : report.entries) width = std::max(width, e.identity_id.size());
    for (const auto& e : report.entries) {
        out << e.identity_id << std::string(width - e.identity_id.size() + 2, ' ');
        out << "n=" << e.degree_min << ".." << e.degree_max << "  " << to_string(e.verdict);
        if (e.witness) {
            out << "  witness(n=" << e.witness->n;
            if (e.witness->k) out << ",k=" << *e.witness->k;
            out << ",p=" << to_string(e.witness->p) << ",q=" << to_string(e.witness->q);
            if (e.witness->t) out << ",t=" << to_string(*e.witness->t);
            if (e.witness->x) out << ",x=" << to_string(*e.witness->x);
            if (e.witness->r) out << ",r=" << to_string(*e.witness->r);
            out << ")";
        }
        if (e.not_applicable) out << "  n/a=" << e.not_applicable;
        out << "\n";
        if (e.correction) out << "    correction: " << *e.correction << "\n";
    }
    return out.str();
}

}  // namespace pqbezier
