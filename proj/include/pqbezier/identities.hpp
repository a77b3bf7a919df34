#pragma once

// Identities for the (p,q)-Bernstein basis: Marsden's identity, the monomial
// representation and the reparametrization formula.

#include "pqbezier/blossom.hpp"
#include "pqbezier/pq_core.hpp"

#include <stdexcept>
#include <vector>

namespace pqbezier {

enum class MarsdenPrefactor {
    published,  // (-1)^j (pq)^{j(j-1)/2}
    corrected,  // (-1)^j (pq)^{j(j-1)/2} p^{(n-1)(n-2j)/2}
};

/// prod_{i=1}^{n} (p^{i-1} x - q^{i-1} t)
template <Scalar T>
T marsden_lhs(int n, const PqParams<T>& params, const T& x, const T& t) {
    T prod{1};
    for (int i = 1; i <= n; ++i) prod *= ipow(params.p, i - 1) * x - ipow(params.q, i - 1) * t;
    return prod;
}

/// Coefficient multiplying B_j^n(t; p, q) on the right-hand side of Marsden's identity.
template <Scalar T>
T marsden_coefficient(int n, int j, const PqParams<T>& params, const T& x, MarsdenPrefactor form) {
    if (params.p == T{0} || params.q == T{0}) throw std::domain_error("Marsden's identity needs p, q != 0");
    const PqParams<T> inv{T{1} / params.p, T{1} / params.q, params.n_context};
    T c = ipow(params.p * params.q, triangular(j)) * bernstein_basis(n, n - j, x, inv) /
          pq_binomial(n, j, inv);
    if (form == MarsdenPrefactor::corrected) c *= ipow(params.p, (n - 1) * (n - 2 * j) / 2);
    return (j % 2 == 0) ? c : -c;
}

template <Scalar T>
T marsden_rhs(int n, const PqParams<T>& params, const T& x, const T& t, MarsdenPrefactor form) {
    auto basis = bernstein_basis_all(n, t, params);
    T sum{0};
    for (int j = 0; j <= n; ++j) sum += marsden_coefficient(n, j, params, x, form) * basis[j];
    return sum;
}

/// LHS - RHS of Marsden's identity with the corrected prefactor; identically zero.
template <Scalar T>
T marsden_residual(int n, const PqParams<T>& params, const T& x, const T& t) {
    auto validity = validate_params(n, params);
    if (!validity.ok) throw BlossomUndefined(std::move(validity));
    return marsden_lhs(n, params, x, t) - marsden_rhs(n, params, x, t, MarsdenPrefactor::corrected);
}

/// Weights w_k with sum_k w_k B_k^n(t) = t^i:
/// w_k = p^{i(n-k)} [k i]_{p,q} / [n i]_{p,q} for k >= i, zero below.
template <Scalar T>
std::vector<T> monomial_coefficients(int n, int i, const PqParams<T>& params) {
    if (n < 0 || i < 0 || i > n) throw std::out_of_range("monomial_coefficients: need 0 <= i <= n");
    const T denom = pq_binomial(n, i, params);
    if (denom == T{0}) throw std::domain_error("monomial_coefficients: [n i]_{p,q} vanishes");
    std::vector<T> w(static_cast<std::size_t>(n) + 1, T{0});
    for (int k = i; k <= n; ++k) w[k] = ipow(params.p, i * (n - k)) * pq_binomial(k, i, params) / denom;
    return w;
}

/// Lower-triangular M with M[i][k] = B_k^i(r), so that
/// B_k^n(r t) = sum_{i=k}^{n} M[i][k] B_i^n(t). Row i has i+1 entries.
template <Scalar T>
std::vector<std::vector<T>> reparametrization_coefficients(int n, const T& r, const PqParams<T>& params) {
    if (n < 0) throw std::invalid_argument("reparametrization_coefficients: negative degree");
    std::vector<std::vector<T>> m;
    m.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) m.push_back(bernstein_basis_all(i, r, params));
    return m;
}

}  // namespace pqbezier
