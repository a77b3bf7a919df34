#pragma once

// (p,q)-Bezier curves S(t) = sum_i P_i B_i^n(t; p, q) and their evaluation,
// elevation, conversion and subdivision algorithms.

#include "pqbezier/blossom.hpp"
#include "pqbezier/point.hpp"
#include "pqbezier/polynomial.hpp"
#include "pqbezier/pq_core.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pqbezier {

enum class Algorithm { direct, dc1, dc2, permuted };

inline const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::direct: return "direct";
        case Algorithm::dc1: return "dc1";
        case Algorithm::dc2: return "dc2";
        case Algorithm::permuted: return "perm";
    }
    return "?";
}

template <Scalar T>
class PqBezierCurve {
public:
    PqBezierCurve(std::vector<Point<T>> control_points, PqParams<T> params)
        : points_(std::move(control_points)), params_(std::move(params)) {
        if (points_.empty()) throw std::invalid_argument("curve needs at least one control point");
        const auto d = points_.front().dimension();
        if (d < 1 || d > 3) throw std::invalid_argument("curve dimension must be 1, 2 or 3");
        for (const auto& pt : points_)
            if (pt.dimension() != d) throw std::invalid_argument("control points differ in dimension");
        if (!(params_.p > T{0}) || !(params_.q > T{0}))
            throw std::invalid_argument("curve parameters require p > 0 and q > 0");
    }

    int degree() const { return static_cast<int>(points_.size()) - 1; }
    std::size_t dimension() const { return points_.front().dimension(); }
    const std::vector<Point<T>>& control_points() const { return points_; }
    const PqParams<T>& params() const { return params_; }

    friend bool operator==(const PqBezierCurve&, const PqBezierCurve&) = default;

private:
    std::vector<Point<T>> points_;
    PqParams<T> params_;
};

class InvalidPermutation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Throws InvalidPermutation unless sigma is a bijection on {1..n}.
inline void check_permutation(std::span<const int> sigma, int n) {
    if (sigma.size() != static_cast<std::size_t>(n))
        throw InvalidPermutation("sigma must have exactly " + std::to_string(n) + " entries");
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int s : sigma) {
        if (s < 1 || s > n || seen[s]) throw InvalidPermutation("sigma is not a permutation of 1..n");
        seen[s] = true;
    }
}

/// Every level of a de Casteljau-type recurrence. levels[0] holds the control
/// points; levels[n] holds the unnormalized apex p^{n(n-1)/2} S(t).
template <Scalar T>
struct EvaluationTriangle {
    Algorithm algorithm = Algorithm::dc1;
    std::vector<int> sigma;  // only for Algorithm::permuted
    std::vector<std::vector<Point<T>>> levels;
    // For dc1 and permuted schemes every node at level k is an affine
    // combination scaled by row_weights[k]; empty for dc2.
    std::vector<T> row_weights;

    /// Levels divided by their row weights (affine intermediate points).
    std::vector<std::vector<Point<T>>> affine_levels() const {
        if (row_weights.empty())
            throw std::logic_error("intermediate points of this scheme are not affine combinations");
        auto out = levels;
        for (std::size_t k = 0; k < out.size(); ++k)
            for (auto& pt : out[k]) pt /= row_weights[k];
        return out;
    }
};

namespace detail {

template <Scalar T>
Point<T> weighted_sum(std::span<const Point<T>> points, const std::vector<T>& weights) {
    Point<T> acc = zero_like(points.front());
    for (std::size_t i = 0; i < points.size(); ++i) acc += points[i] * weights[i];
    return acc;
}

template <Scalar T>
T q_power(const PqParams<T>& params, int e) {
    if (e < 0 && params.q == T{0}) throw std::domain_error("q must be nonzero");
    return ipow(params.q, e);
}

}  // namespace detail

template <Scalar T>
EvaluationTriangle<T> intermediate_points(const PqBezierCurve<T>& curve, const T& t, Algorithm algorithm,
                                          std::span<const int> sigma = {}) {
    const int n = curve.degree();
    const auto& P = curve.params();
    EvaluationTriangle<T> tri;
    tri.algorithm = algorithm;
    tri.levels.reserve(static_cast<std::size_t>(n) + 1);
    tri.levels.push_back(curve.control_points());

    switch (algorithm) {
        case Algorithm::direct:
            throw std::invalid_argument("direct evaluation has no intermediate points");
        case Algorithm::dc1: {
            tri.row_weights.push_back(T{1});
            for (int k = 1; k <= n; ++k) {
                const auto& prev = tri.levels.back();
                std::vector<Point<T>> row;
                const T pk = ipow(P.p, n - k);
                for (int i = 0; i <= n - k; ++i) {
                    const T w = ipow(P.p, i) * detail::q_power(P, n - k - i) * t;
                    row.push_back(prev[i] * (pk - w) + prev[i + 1] * w);
                }
                tri.levels.push_back(std::move(row));
                tri.row_weights.push_back(tri.row_weights.back() * pk);
            }
            break;
        }
        case Algorithm::dc2: {
            for (int k = 1; k <= n; ++k) {
                const auto& prev = tri.levels.back();
                std::vector<Point<T>> row;
                const T right = ipow(P.p, n - k) * t;
                for (int i = 0; i <= n - k; ++i) {
                    const T left = ipow(P.q, i) * (ipow(P.p, n - k - i) - ipow(P.q, n - k - i) * t);
                    row.push_back(prev[i] * left + prev[i + 1] * right);
                }
                tri.levels.push_back(std::move(row));
            }
            break;
        }
        case Algorithm::permuted: {
            check_permutation(sigma, n);
            tri.sigma.assign(sigma.begin(), sigma.end());
            tri.row_weights.push_back(T{1});
            for (int k = 0; k < n; ++k) {
                const int e = sigma[k] - 1;
                const auto& prev = tri.levels.back();
                std::vector<Point<T>> row;
                const T pe = ipow(P.p, e);
                for (int i = 0; i < n - k; ++i) {
                    const T w = ipow(P.p, i) * detail::q_power(P, e - i) * t;
                    row.push_back(prev[i] * (pe - w) + prev[i + 1] * w);
                }
                tri.levels.push_back(std::move(row));
                tri.row_weights.push_back(tri.row_weights.back() * pe);
            }
            break;
        }
    }
    return tri;
}

/// p^{n(n-1)/2}: the factor by which every recurrence apex exceeds S(t).
template <Scalar T>
T apex_scale(int n, const PqParams<T>& params) {
    return ipow(params.p, triangular(n));
}

template <Scalar T>
Point<T> evaluate_permuted(const PqBezierCurve<T>& curve, const T& t, std::span<const int> sigma) {
    auto tri = intermediate_points(curve, t, Algorithm::permuted, sigma);
    return tri.levels.back().front() / apex_scale(curve.degree(), curve.params());
}

template <Scalar T>
Point<T> evaluate(const PqBezierCurve<T>& curve, const T& t, Algorithm algorithm = Algorithm::direct) {
    if (algorithm == Algorithm::direct) {
        auto basis = bernstein_basis_all(curve.degree(), t, curve.params());
        return detail::weighted_sum<T>(curve.control_points(), basis);
    }
    if (algorithm == Algorithm::permuted)
        throw std::invalid_argument("permuted evaluation needs sigma; use evaluate_permuted");
    auto tri = intermediate_points(curve, t, algorithm);
    return tri.levels.back().front() / apex_scale(curve.degree(), curve.params());
}

/// Degree n+1 control points of the same curve:
///
///   P'_k = (1 - p^k [n+1-k]/[n+1]) P_{k-1} + p^k ([n+1-k]/[n+1]) P_k
///
/// This follows from B_k^n = p^k [n+1-k]/[n+1] B_k^{n+1}
///                         + (1 - p^{k+1} [n-k]/[n+1]) B_{k+1}^{n+1}.
template <Scalar T>
PqBezierCurve<T> degree_elevate(const PqBezierCurve<T>& curve) {
    const int n = curve.degree();
    const auto& P = curve.params();
    const auto& pts = curve.control_points();
    const T whole = pq_integer(n + 1, P);
    std::vector<Point<T>> out;
    out.reserve(pts.size() + 1);
    for (int k = 0; k <= n + 1; ++k) {
        const T right = ipow(P.p, k) * pq_integer(n + 1 - k, P) / whole;
        const T left = T{1} - right;
        Point<T> pt = zero_like(pts.front());
        if (k >= 1) pt += pts[k - 1] * left;
        if (k <= n) pt += pts[k] * right;
        out.push_back(std::move(pt));
    }
    return PqBezierCurve<T>(std::move(out), P);
}

/// Monomial coefficients of sum_i P_i B_i^n(t).
template <Scalar T>
Polynomial<Point<T>> polynomial_from_curve(const PqBezierCurve<T>& curve) {
    const int n = curve.degree();
    const auto& P = curve.params();
    const auto& pts = curve.control_points();
    auto binom = pq_binomial_row(n, P);
    const T norm = ipow(P.p, -triangular(n));
    std::vector<Point<T>> a(pts.size(), zero_like(pts.front()));
    for (int i = 0; i <= n; ++i) {
        const T lead = norm * binom[i] * ipow(P.p, triangular(i));
        auto tail = pq_expansion_coefficients(n - i, P);
        for (int m = 0; m <= n - i; ++m) a[i + m] += pts[i] * (lead * tail[m]);
    }
    return Polynomial<Point<T>>(std::move(a));
}

/// Control points of a polynomial via its blossom and the dual functionals.
template <Scalar T>
PqBezierCurve<T> curve_from_polynomial(const Polynomial<Point<T>>& poly, const PqParams<T>& params) {
    auto form = blossom_from_polynomial(poly, params);
    return PqBezierCurve<T>(dual_control_points(form), params);
}

/// Control points of t -> S(r t): L_i = sum_{k<=i} P_k B_k^i(r).
template <Scalar T>
PqBezierCurve<T> subdivide_left(const PqBezierCurve<T>& curve, const T& r) {
    if (!(r > T{0}) || !(r < T{1})) throw std::invalid_argument("subdivision parameter must lie in (0,1)");
    const auto& pts = curve.control_points();
    std::vector<Point<T>> left;
    left.reserve(pts.size());
    for (int i = 0; i <= curve.degree(); ++i) {
        auto basis = bernstein_basis_all(i, r, curve.params());
        left.push_back(detail::weighted_sum<T>(std::span(pts).first(static_cast<std::size_t>(i) + 1), basis));
    }
    return PqBezierCurve<T>(std::move(left), curve.params());
}

template <Scalar T>
std::vector<Point<T>> flatten(const PqBezierCurve<T>& curve, int samples) {
    if (samples < 2) throw std::invalid_argument("flatten needs at least 2 samples");
    std::vector<Point<T>> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j) {
        if (j == samples - 1) {
            out.push_back(evaluate(curve, T{1}));
        } else {
            T t = T(j) / T(samples - 1);
            out.push_back(evaluate(curve, t));
        }
    }
    return out;
}

/// Distance from `m` to the segment [a, b].
inline double segment_distance(const Point<double>& m, const Point<double>& a, const Point<double>& b) {
    double ab2 = 0, dot = 0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        const double ab = b[i] - a[i];
        ab2 += ab * ab;
        dot += (m[i] - a[i]) * ab;
    }
    const double s = ab2 > 0 ? std::clamp(dot / ab2, 0.0, 1.0) : 0.0;
    double d2 = 0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        const double c = a[i] + s * (b[i] - a[i]) - m[i];
        d2 += c * c;
    }
    return std::sqrt(d2);
}

struct AdaptiveOptions {
    double tolerance = 1e-7;  // max chord deviation
    int initial_segments = 8;
    int max_depth = 24;
};

namespace detail {

template <Scalar T>
void refine(const PqBezierCurve<T>& curve, const T& a, const Point<T>& pa, const T& b, const Point<T>& pb,
            const AdaptiveOptions& opt, int depth, std::vector<Point<T>>& out) {
    const T m = (a + b) / T{2};
    Point<T> pm = evaluate(curve, m);
    if (depth < opt.max_depth && segment_distance(to_double(pm), to_double(pa), to_double(pb)) >= opt.tolerance) {
        refine(curve, a, pa, m, pm, opt, depth + 1, out);
        refine(curve, m, pm, b, pb, opt, depth + 1, out);
    } else {
        out.push_back(pb);
    }
}

}  // namespace detail

/// Polyline through S over [a, b], refined until every chord lies within the tolerance
/// of the curve at its parametric midpoint. Endpoints are included.
template <Scalar T>
std::vector<Point<T>> adaptive_samples(const PqBezierCurve<T>& curve, const T& a, const T& b,
                                       const AdaptiveOptions& opt = {}) {
    const int segs = std::max(1, opt.initial_segments);
    std::vector<Point<T>> out{evaluate(curve, a)};
    T prev_t = a;
    for (int j = 1; j <= segs; ++j) {
        T next_t = (j == segs) ? b : a + (b - a) * T(j) / T(segs);
        Point<T> prev_pt = out.back();
        detail::refine(curve, prev_t, prev_pt, next_t, evaluate(curve, next_t), opt, 0, out);
        prev_t = next_t;
    }
    return out;
}

/// Left piece in exact (p,q)-Bezier form; the right piece over [r,1] only as samples.
template <Scalar T>
struct SubdivisionResult {
    T r;
    PqBezierCurve<T> left;
    std::vector<Point<T>> right_samples;
};

template <Scalar T>
SubdivisionResult<T> subdivide(const PqBezierCurve<T>& curve, const T& r, const AdaptiveOptions& opt = {}) {
    auto left = subdivide_left(curve, r);
    auto right = adaptive_samples(curve, r, T{1}, opt);
    // The split point is the apex of the left piece; reuse it so the chain is seamless.
    right.front() = left.control_points().back();
    return {r, std::move(left), std::move(right)};
}

/// Polyline from repeated halving: at each level the right half is sampled
/// and the exact left half is halved again.
template <Scalar T>
std::vector<Point<T>> bisection_polyline(const PqBezierCurve<T>& curve, int levels,
                                         const AdaptiveOptions& opt = {}) {
    std::vector<std::vector<Point<T>>> rights;
    PqBezierCurve<T> current = curve;
    const T half = T{1} / T{2};
    for (int level = 0; level < levels; ++level) {
        auto piece = subdivide(current, half, opt);
        rights.push_back(std::move(piece.right_samples));
        current = std::move(piece.left);
    }
    std::vector<Point<T>> out = adaptive_samples(current, T{0}, T{1}, opt);
    for (auto it = rights.rbegin(); it != rights.rend(); ++it) out.insert(out.end(), it->begin() + 1, it->end());
    return out;
}

}  // namespace pqbezier
