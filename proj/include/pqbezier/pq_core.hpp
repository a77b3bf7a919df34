#pragma once

// (p,q)-integers, (p,q)-binomials and the (p,q)-Bernstein basis
//
//   [n]_{p,q}          = p^{n-1} + p^{n-2} q + ... + q^{n-1}
//   (1-t)^m_{p,q}      = (1 - t)(p - q t)(p^2 - q^2 t) ... (p^{m-1} - q^{m-1} t)
//   B_k^n(t; p, q)     = p^{-n(n-1)/2} [n k]_{p,q} p^{k(k-1)/2} t^k (1-t)^{n-k}_{p,q}
//
// Nothing here divides by a (p,q)-integer, so p = q (and the classical case
// p = q = 1) is regular. The basis itself only needs p != 0; the curve and
// blossom layers impose their own parameter domains.

#include "pqbezier/scalar.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace pqbezier {

template <Scalar T>
struct PqParams {
    T p{1};
    T q{1};
    std::optional<int> n_context;  // degree at which restrictions are checked, if any

    friend bool operator==(const PqParams&, const PqParams&) = default;
};

template <Scalar T>
PqParams<double> to_double(const PqParams<T>& params) {
    return {to_double(params.p), to_double(params.q), params.n_context};
}

inline int triangular(int n) { return n * (n - 1) / 2; }

template <Scalar T>
T pq_integer(int n, const PqParams<T>& params) {
    if (n < 0) throw std::invalid_argument("pq_integer: negative n");
    // Summation form, never (p^n - q^n)/(p - q).
    T sum{0};
    T p_pow{1};
    for (int i = n - 1; i >= 0; --i) {
        sum += p_pow * ipow(params.q, i);
        p_pow *= params.p;
    }
    return sum;
}

template <Scalar T>
T pq_factorial(int n, const PqParams<T>& params) {
    T f{1};
    for (int i = 1; i <= n; ++i) f *= pq_integer(i, params);
    return f;
}

/// All (p,q)-binomials [n 0] .. [n n] via [n k] = p^k [n-1 k] + q^{n-k} [n-1 k-1].
template <Scalar T>
std::vector<T> pq_binomial_row(int n, const PqParams<T>& params) {
    if (n < 0) throw std::invalid_argument("pq_binomial_row: negative n");
    std::vector<T> row{T{1}};
    for (int m = 1; m <= n; ++m) {
        std::vector<T> next(static_cast<std::size_t>(m) + 1, T{0});
        for (int k = 0; k <= m; ++k) {
            T value{0};
            if (k < m) value += ipow(params.p, k) * row[k];
            if (k > 0) value += ipow(params.q, m - k) * row[k - 1];
            next[k] = value;
        }
        row = std::move(next);
    }
    return row;
}

/// [n k]_{p,q}; zero when k lies outside [0, n].
template <Scalar T>
T pq_binomial(int n, int k, const PqParams<T>& params) {
    if (n < 0) throw std::invalid_argument("pq_binomial: negative n");
    if (k < 0 || k > n) return T{0};
    return pq_binomial_row(n, params)[k];
}

/// (1-t)^m_{p,q} = prod_{s=0}^{m-1} (p^s - q^s t).
template <Scalar T>
T pq_one_minus_pow(const T& t, int m, const PqParams<T>& params) {
    if (m < 0) throw std::invalid_argument("pq_one_minus_pow: negative m");
    T result{1};
    T ps{1};
    T qs{1};
    for (int s = 0; s < m; ++s) {
        result *= ps - qs * t;
        ps *= params.p;
        qs *= params.q;
    }
    return result;
}

/// Monomial coefficients e_0..e_m with sum_k e_k t^k = (1-t)^m_{p,q}.
template <Scalar T>
std::vector<T> pq_expansion_coefficients(int m, const PqParams<T>& params) {
    if (m < 0) throw std::invalid_argument("pq_expansion_coefficients: negative m");
    auto binom = pq_binomial_row(m, params);
    std::vector<T> coeffs(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) {
        T c = ipow(params.p, triangular(m - k)) * ipow(params.q, triangular(k)) * binom[k];
        coeffs[k] = (k % 2 == 0) ? c : -c;
    }
    return coeffs;
}

template <Scalar T>
T bernstein_basis(int n, int k, const T& t, const PqParams<T>& params) {
    if (n < 0 || k < 0 || k > n) throw std::out_of_range("bernstein_basis: index out of range");
    return ipow(params.p, triangular(k) - triangular(n)) * pq_binomial(n, k, params) *
           ipow(t, k) * pq_one_minus_pow(t, n - k, params);
}

/// B_0^n(t) .. B_n^n(t), sharing the power and product chains across indices.
template <Scalar T>
std::vector<T> bernstein_basis_all(int n, const T& t, const PqParams<T>& params) {
    if (n < 0) throw std::invalid_argument("bernstein_basis_all: negative degree");
    const auto count = static_cast<std::size_t>(n) + 1;
    auto binom = pq_binomial_row(n, params);

    // tail[m] = (1-t)^m_{p,q}
    std::vector<T> tail(count);
    tail[0] = T{1};
    T ps{1};
    T qs{1};
    for (int m = 1; m <= n; ++m) {
        tail[m] = tail[m - 1] * (ps - qs * t);
        ps *= params.p;
        qs *= params.q;
    }

    std::vector<T> values(count);
    const T norm = ipow(params.p, -triangular(n));
    T t_pow{1};
    T p_tri{1};  // p^{k(k-1)/2}
    for (int k = 0; k <= n; ++k) {
        values[k] = norm * binom[k] * p_tri * t_pow * tail[n - k];
        t_pow *= t;
        p_tri *= ipow(params.p, k);
    }
    return values;
}

/// Nodes [k]_{p,q} / (p^{k-n} [n]_{p,q}) at which the operator samples f.
template <Scalar T>
std::vector<T> bernstein_operator_nodes(int n, const PqParams<T>& params) {
    if (n < 1) throw std::invalid_argument("bernstein_operator_nodes: n must be >= 1");
    const T whole = pq_integer(n, params);
    std::vector<T> nodes;
    nodes.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        nodes.push_back(pq_integer(k, params) / (ipow(params.p, k - n) * whole));
    return nodes;
}

/// The (p,q)-Bernstein operator applied to caller-supplied samples of f.
template <Scalar T>
T bernstein_operator(std::span<const T> f_samples, int n, const T& x, const PqParams<T>& params) {
    if (n < 1) throw std::invalid_argument("bernstein_operator: n must be >= 1");
    if (f_samples.size() != static_cast<std::size_t>(n) + 1)
        throw std::invalid_argument("bernstein_operator: expected n+1 samples");
    auto basis = bernstein_basis_all(n, x, params);
    T sum{0};
    for (std::size_t k = 0; k < basis.size(); ++k) sum += basis[k] * f_samples[k];
    return sum;
}

}  // namespace pqbezier
