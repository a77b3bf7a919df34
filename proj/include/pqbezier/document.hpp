#pragma once

// JSON curve documents:
//
//   {"version": 1, "degree": n, "dimension": d, "p": .., "q": ..,
//    "points": [[..d coords..], ... n+1 points]}
//
// Numbers are JSON numbers or rational strings "num/den". Exact mode accepts
// JSON integers and rational strings only.

#include "json.hpp"
#include "pqbezier/curve.hpp"
#include "pqbezier/scalar.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace pqbezier {

/// The document does not match the schema (maps to CLI exit 2, HTTP 400).
class DocumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Reading or writing a file failed (CLI exit 3).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kDocumentVersion = 1;

Rational scalar_from_json_exact(const nlohmann::json& value, const std::string& where);
double scalar_from_json_float(const nlohmann::json& value, const std::string& where);

template <Scalar T>
T scalar_from_json(const nlohmann::json& value, const std::string& where) {
    if constexpr (is_exact_v<T>)
        return scalar_from_json_exact(value, where);
    else
        return scalar_from_json_float(value, where);
}

/// Doubles become JSON numbers, rationals become strings.
inline nlohmann::json scalar_to_json(double v) { return v; }
inline nlohmann::json scalar_to_json(const Rational& v) { return to_string(v); }

template <Scalar T>
nlohmann::json point_to_json(const Point<T>& pt) {
    auto out = nlohmann::json::array();
    for (const auto& c : pt.coords()) out.push_back(scalar_to_json(c));
    return out;
}

template <Scalar T>
Point<T> point_from_json(const nlohmann::json& j, std::size_t dimension, const std::string& where) {
    if (!j.is_array()) throw DocumentError(where + ": expected an array of coordinates");
    if (j.size() != dimension)
        throw DocumentError(where + ": expected " + std::to_string(dimension) + " coordinates, got " +
                            std::to_string(j.size()));
    std::vector<T> coords;
    coords.reserve(dimension);
    for (std::size_t i = 0; i < j.size(); ++i)
        coords.push_back(scalar_from_json<T>(j[i], where + "[" + std::to_string(i) + "]"));
    return Point<T>(std::move(coords));
}

/// Schema checks shared by both modes; returns (degree, dimension).
std::pair<int, std::size_t> check_document_shape(const nlohmann::json& doc);

/// Schema errors throw DocumentError; invalid curve parameters (p or q not
/// positive, dimension outside 1..3) throw std::invalid_argument from the curve.
template <Scalar T>
PqBezierCurve<T> curve_from_document(const nlohmann::json& doc) {
    const auto [degree, dimension] = check_document_shape(doc);
    std::vector<Point<T>> points;
    points.reserve(static_cast<std::size_t>(degree) + 1);
    const auto& jp = doc.at("points");
    for (std::size_t i = 0; i < jp.size(); ++i)
        points.push_back(point_from_json<T>(jp[i], dimension, "points[" + std::to_string(i) + "]"));
    PqParams<T> params{scalar_from_json<T>(doc.at("p"), "p"), scalar_from_json<T>(doc.at("q"), "q"), {}};
    return PqBezierCurve<T>(std::move(points), std::move(params));
}

template <Scalar T>
nlohmann::json document_from_curve(const PqBezierCurve<T>& curve) {
    auto points = nlohmann::json::array();
    for (const auto& pt : curve.control_points()) points.push_back(point_to_json(pt));
    return {{"version", kDocumentVersion},
            {"degree", curve.degree()},
            {"dimension", curve.dimension()},
            {"p", scalar_to_json(curve.params().p)},
            {"q", scalar_to_json(curve.params().q)},
            {"points", std::move(points)}};
}

/// Parses JSON text; syntax errors become DocumentError.
nlohmann::json parse_json_text(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

template <Scalar T>
PqBezierCurve<T> load_curve(const std::filesystem::path& path) {
    return curve_from_document<T>(parse_json_text(read_text_file(path)));
}

}  // namespace pqbezier
