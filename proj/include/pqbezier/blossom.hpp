#pragma once

// The (p,q)-blossom: the unique symmetric multiaffine s(u_1..u_n) with
//
//   s(p^{n-1} t, p^{n-2} q t, ..., q^{n-1} t) = S(t).
//
// For S(t) = sum a_k t^k it is sum a_k phi_{n,k}(u) / phi_{n,k}(diagonal),
// with phi_{n,k} the k-th elementary symmetric polynomial. The diagonal
// denominators are always expanded from the explicit point list; the closed
// form (pq)^{k(k-1)/2} [n k]_{p,q} is only used as a cross-check.

#include "pqbezier/polynomial.hpp"
#include "pqbezier/pq_core.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pqbezier {

enum class ParamCondition { q_zero, p_zero, p_eq_q, p_eq_minus_q_even_n };

inline const char* to_string(ParamCondition c) {
    switch (c) {
        case ParamCondition::q_zero: return "q_zero";
        case ParamCondition::p_zero: return "p_zero";
        case ParamCondition::p_eq_q: return "p_eq_q";
        case ParamCondition::p_eq_minus_q_even_n: return "p_eq_minus_q_even_n";
    }
    return "?";
}

struct ParameterValidity {
    bool ok = true;
    std::vector<ParamCondition> violated_conditions;
};

class BlossomUndefined : public std::domain_error {
public:
    explicit BlossomUndefined(ParameterValidity validity)
        : std::domain_error(describe(validity)), validity_(std::move(validity)) {}
    const ParameterValidity& validity() const { return validity_; }

private:
    static std::string describe(const ParameterValidity& v) {
        std::string s = "blossom undefined:";
        for (auto c : v.violated_conditions) s += std::string(" ") + to_string(c);
        return s;
    }
    ParameterValidity validity_;
};

/// Standard restrictions for degree n: q != 0 and p != q when n > 1, q != -p for
/// even n > 1. p = 0 is also rejected for n > 1 since it zeroes phi_{n,n}.
template <Scalar T>
ParameterValidity validate_params(int n, const PqParams<T>& params) {
    if (n < 0) throw std::invalid_argument("validate_params: negative degree");
    ParameterValidity v;
    if (n > 1) {
        if (params.q == T{0}) v.violated_conditions.push_back(ParamCondition::q_zero);
        if (params.p == T{0}) v.violated_conditions.push_back(ParamCondition::p_zero);
        if (params.p == params.q) v.violated_conditions.push_back(ParamCondition::p_eq_q);
        if (n % 2 == 0 && params.q == -params.p && params.p != T{0})
            v.violated_conditions.push_back(ParamCondition::p_eq_minus_q_even_n);
    }
    v.ok = v.violated_conditions.empty();
    return v;
}

/// phi_{m,0} .. phi_{m,m} of `values` by the prefix recurrence e_k <- e_k + u e_{k-1}.
template <Scalar T>
std::vector<T> elementary_symmetric_all(std::span<const T> values) {
    std::vector<T> e(values.size() + 1, T{0});
    e[0] = T{1};
    for (std::size_t j = 0; j < values.size(); ++j)
        for (std::size_t k = j + 1; k >= 1; --k) e[k] += values[j] * e[k - 1];
    return e;
}

template <Scalar T>
T elementary_symmetric(std::span<const T> values, int k) {
    if (k < 0) throw std::invalid_argument("elementary_symmetric: negative k");
    if (static_cast<std::size_t>(k) > values.size()) return T{0};
    std::vector<T> e(static_cast<std::size_t>(k) + 1, T{0});
    e[0] = T{1};
    for (std::size_t j = 0; j < values.size(); ++j) {
        std::size_t top = std::min<std::size_t>(j + 1, static_cast<std::size_t>(k));
        for (std::size_t i = top; i >= 1; --i) e[i] += values[j] * e[i - 1];
    }
    return e[static_cast<std::size_t>(k)];
}

/// (p^{n-1}, p^{n-2} q, ..., q^{n-1})
template <Scalar T>
std::vector<T> pq_diagonal(int n, const PqParams<T>& params) {
    std::vector<T> d;
    d.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) d.push_back(ipow(params.p, n - 1 - i) * ipow(params.q, i));
    return d;
}

/// Arguments of the k-th dual functional: n-k zeros followed by the first k
/// diagonal entries p^{n-1}, p^{n-2} q, ..., p^{n-k} q^{k-1}.
template <Scalar T>
std::vector<T> dual_functional_arguments(int n, int k, const PqParams<T>& params) {
    auto diag = pq_diagonal(n, params);
    std::vector<T> u(static_cast<std::size_t>(n - k), T{0});
    u.insert(u.end(), diag.begin(), diag.begin() + k);
    return u;
}

template <Scalar T, class V>
class BlossomForm {
public:
    BlossomForm(int degree, PqParams<T> params, std::vector<V> coefficients)
        : degree_(degree), params_(std::move(params)), coeffs_(std::move(coefficients)) {
        if (coeffs_.size() != static_cast<std::size_t>(degree_) + 1)
            throw std::invalid_argument("BlossomForm: expected degree+1 coefficients");
    }

    int degree() const { return degree_; }
    const PqParams<T>& params() const { return params_; }
    /// c_k = a_k / phi_{n,k}(diagonal)
    const std::vector<V>& coefficients() const { return coeffs_; }

private:
    int degree_;
    PqParams<T> params_;
    std::vector<V> coeffs_;
};

template <Scalar T, class V>
BlossomForm<T, V> blossom_from_polynomial(const Polynomial<V>& poly, const PqParams<T>& params) {
    const int n = poly.degree_bound();
    auto validity = validate_params(n, params);
    if (!validity.ok) throw BlossomUndefined(std::move(validity));
    auto diag = pq_diagonal(n, params);
    auto denoms = elementary_symmetric_all<T>(diag);
    std::vector<V> c;
    c.reserve(poly.coefficients().size());
    for (int k = 0; k <= n; ++k) {
        if (denoms[k] == T{0}) throw BlossomUndefined(validity);
        c.push_back(poly[k] / denoms[k]);
    }
    return BlossomForm<T, V>(n, params, std::move(c));
}

template <Scalar T, class V>
V blossom_evaluate(const BlossomForm<T, V>& form, std::span<const T> u) {
    if (u.size() != static_cast<std::size_t>(form.degree()))
        throw std::invalid_argument("blossom_evaluate: expected exactly n arguments");
    auto phi = elementary_symmetric_all(u);
    const auto& c = form.coefficients();
    V acc = c[0] * phi[0];
    for (std::size_t k = 1; k < c.size(); ++k) acc += c[k] * phi[k];
    return acc;
}

/// P_k = s(0^{n-k}, p^{n-1}, ..., p^{n-k} q^{k-1}), k = 0..n.
template <Scalar T, class V>
std::vector<V> dual_control_points(const BlossomForm<T, V>& form) {
    const int n = form.degree();
    if (!validate_params(n, form.params()).ok)
        throw BlossomUndefined(validate_params(n, form.params()));
    std::vector<V> points;
    points.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
        auto u = dual_functional_arguments(n, k, form.params());
        points.push_back(blossom_evaluate(form, std::span<const T>(u)));
    }
    return points;
}

/// Triangular recurrence over the dual control points:
///
///   Q_i^{k+1} = (1 - u_{k+1} p^i q^{-i}) Q_i^k + u_{k+1} p^i q^{-i} Q_{i+1}^k
///
/// Its apex is the blossom at scaled arguments: Q_0^n(u) = s(p^{n-1} u_1, ..., p^{n-1} u_n).
/// At p = 1 that is s(u) itself. Use recursive_blossom_value for s(u).
template <Scalar T, class V>
V recursive_blossom_evaluate(std::span<const V> controls, std::span<const T> u,
                             const PqParams<T>& params) {
    if (controls.empty()) throw std::invalid_argument("recursive_blossom_evaluate: no control points");
    const auto n = controls.size() - 1;
    if (u.size() != n) throw std::invalid_argument("recursive_blossom_evaluate: expected n arguments");
    if (params.q == T{0}) throw std::domain_error("recursive_blossom_evaluate: q must be nonzero");
    auto validity = validate_params(static_cast<int>(n), params);
    if (!validity.ok) throw BlossomUndefined(std::move(validity));

    const T ratio = params.p / params.q;
    std::vector<V> row(controls.begin(), controls.end());
    for (std::size_t k = 0; k < n; ++k) {
        T w{1};  // (p/q)^i
        for (std::size_t i = 0; i + k < n; ++i) {
            const T a = u[k] * w;
            row[i] = row[i] * (T{1} - a) + row[i + 1] * a;
            w *= ratio;
        }
        row.pop_back();
    }
    return row.front();
}

/// s(u) from the dual control points via the recurrence, undoing its p^{n-1} scaling.
template <Scalar T, class V>
V recursive_blossom_value(std::span<const V> controls, std::span<const T> u, const PqParams<T>& params) {
    if (controls.empty()) throw std::invalid_argument("recursive_blossom_value: no control points");
    const int n = static_cast<int>(controls.size()) - 1;
    if (params.p == T{0}) throw std::domain_error("recursive_blossom_value: p must be nonzero");
    const T scale = ipow(params.p, -(n - 1 < 0 ? 0 : n - 1));
    std::vector<T> scaled(u.begin(), u.end());
    for (auto& x : scaled) x *= scale;
    return recursive_blossom_evaluate(controls, std::span<const T>(scaled), params);
}

}  // namespace pqbezier
