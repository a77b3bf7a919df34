#include "doctest.h"
#include "pqbezier/identities.hpp"
#include "test_util.hpp"

#include <random>

using namespace pqbezier;
using testutil::PR;
using testutil::R;
using testutil::rat;

TEST_CASE("Marsden residual vanishes") {
    SUBCASE("n = 1 for any parameters") {
        for (const auto& P : testutil::standard_params())
            for (auto [x, t] : {std::pair{rat(1, 3), rat(1, 5)}, std::pair{rat(-2), rat(7, 4)}}) {
                CHECK(marsden_residual(1, P, x, t) == 0);
                CHECK(marsden_lhs(1, P, x, t) == x - t);
            }
    }
    SUBCASE("n = 2, p = 2, q = 1, x = 1/3, t = 1/5") {
        CHECK(marsden_residual(2, testutil::params(2, 1, 1, 1), rat(1, 3), rat(1, 5)) == 0);
    }
    SUBCASE("(n+1)^2 pairs for each n <= 6") {
        std::mt19937_64 rng(41);
        for (const auto& P : testutil::standard_params())
            for (int n = 1; n <= 6; ++n)
                for (int i = 0; i <= n; ++i)
                    for (int j = 0; j <= n; ++j) {
                        const R x = rat(2 * i + 1, n + 2) - rat(1, 3);
                        const R t = rat(3 * j - 1, n + 3);
                        CHECK(marsden_residual(n, P, x, t) == 0);
                    }
    }
    SUBCASE("the published prefactor needs correction unless p = 1") {
        const PR P = testutil::params(2, 1, 1, 1);
        CHECK(marsden_lhs(2, P, rat(1, 3), rat(1, 5)) !=
              marsden_rhs(2, P, rat(1, 3), rat(1, 5), MarsdenPrefactor::published));
        const PR Q{rat(1), rat(1, 2), {}};
        for (int n = 1; n <= 5; ++n)
            CHECK(marsden_lhs(n, Q, rat(2, 7), rat(3, 5)) ==
                  marsden_rhs(n, Q, rat(2, 7), rat(3, 5), MarsdenPrefactor::published));
    }
    SUBCASE("invalid parameters") {
        CHECK_THROWS_AS(marsden_residual(2, PR{rat(1), rat(1), {}}, rat(1, 2), rat(1, 2)), BlossomUndefined);
        CHECK_THROWS_AS(marsden_coefficient(2, 0, PR{rat(0), rat(1), {}}, rat(1), MarsdenPrefactor::published),
                        std::domain_error);
    }
}

TEST_CASE("Marsden at p = 1 matches the q-oracle") {
    for (auto q : {rat(1, 2), rat(2, 3), rat(3)})
        for (int n = 1; n <= 6; ++n) {
            const PR P{rat(1), q, {}};
            const R x = rat(3, 7), t = rat(-1, 4);
            CHECK(marsden_rhs(n, P, x, t, MarsdenPrefactor::published) == oracle::q_marsden_rhs(n, x, t, q));
            CHECK(marsden_lhs(n, P, x, t) == oracle::q_marsden_rhs(n, x, t, q));
        }
}

TEST_CASE("monomial representation") {
    const PR P = testutil::params(2, 1, 1, 1);
    CHECK(monomial_coefficients(2, 1, P) == std::vector<R>{rat(0), rat(2, 3), rat(1)});
    CHECK(monomial_coefficients(4, 0, P) == std::vector<R>(5, rat(1)));
    CHECK(monomial_coefficients(3, 3, P) == std::vector<R>{rat(0), rat(0), rat(0), rat(1)});
    CHECK_THROWS_AS(monomial_coefficients(3, 4, P), std::out_of_range);
    CHECK_THROWS_AS(monomial_coefficients(3, -1, P), std::out_of_range);
    for (const auto& Q : testutil::standard_params())
        for (int n = 0; n <= 8; ++n)
            for (int i = 0; i <= n; ++i) {
                const auto w = monomial_coefficients(n, i, Q);
                for (int j = 0; j <= n; ++j) {
                    const R t = rat(2 * j - 1, n + 1);
                    const auto b = bernstein_basis_all(n, t, Q);
                    R sum{0};
                    for (int k = 0; k <= n; ++k) sum += w[k] * b[k];
                    CHECK(sum == ipow(t, i));
                }
            }
    for (auto q : {rat(1, 2), rat(5, 2)})
        for (int n = 0; n <= 6; ++n)
            for (int i = 0; i <= n; ++i)
                CHECK(monomial_coefficients(n, i, PR{rat(1), q, {}}) == oracle::q_monomial_weights(n, i, q));
}

TEST_CASE("reparametrization") {
    const PR P = testutil::params(2, 1, 1, 1);
    SUBCASE("r = 1 gives the identity") {
        const auto m = reparametrization_coefficients(4, rat(1), P);
        for (int i = 0; i <= 4; ++i)
            for (int k = 0; k <= i; ++k) CHECK(m[i][k] == (i == k ? 1 : 0));
    }
    SUBCASE("r = 0 keeps only column 0") {
        const auto m = reparametrization_coefficients(4, rat(0), P);
        for (int i = 0; i <= 4; ++i)
            for (int k = 0; k <= i; ++k) CHECK(m[i][k] == (k == 0 ? 1 : 0));
    }
    SUBCASE("n = 2, k = 1, r = 1/2") {
        const auto m = reparametrization_coefficients(2, rat(1, 2), P);
        CHECK(m[1][1] == rat(1, 2));
        CHECK(m[2][1] == rat(3, 8));
        for (auto t : {rat(0), rat(1, 3), rat(2)}) {
            const R lhs = bernstein_basis(2, 1, t / 2, P);
            CHECK(lhs == rat(3, 2) * (t / 2) * (1 - t / 2));
            CHECK(lhs == rat(1, 2) * rat(3, 2) * t * (1 - t) + rat(3, 8) * t * t);
        }
    }
    SUBCASE("random r, n <= 6") {
        std::mt19937_64 rng(42);
        for (const auto& Q : testutil::standard_params())
            for (int n = 0; n <= 6; ++n)
                for (int rep = 0; rep < 5; ++rep) {
                    const R r = oracle::random_unit(rng);
                    const auto m = reparametrization_coefficients(n, r, Q);
                    for (int j = 0; j <= n; ++j) {
                        const R t = rat(j, n + 1);
                        const auto b = bernstein_basis_all(n, t, Q);
                        for (int k = 0; k <= n; ++k) {
                            R sum{0};
                            for (int i = k; i <= n; ++i) sum += m[i][k] * b[i];
                            CHECK(sum == bernstein_basis(n, k, r * t, Q));
                        }
                    }
                }
    }
    SUBCASE("p = 1 matches the q-oracle") {
        const PR Q{rat(1), rat(2, 3), {}};
        const auto m = reparametrization_coefficients(5, rat(3, 7), Q);
        for (int i = 0; i <= 5; ++i)
            for (int k = 0; k <= i; ++k) CHECK(m[i][k] == oracle::q_basis(i, k, rat(3, 7), Q.q));
    }
}
