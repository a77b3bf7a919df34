#include "pqbezier/document.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace pqbezier {

namespace {

const std::set<std::string> kFields{"version", "degree", "dimension", "p", "q", "points"};

int integer_field(const nlohmann::json& doc, const char* key) {
    const auto& v = doc.at(key);
    if (!v.is_number_integer()) throw DocumentError(std::string(key) + ": expected an integer");
    return v.get<int>();
}

}  // namespace

Rational scalar_from_json_exact(const nlohmann::json& value, const std::string& where) {
    if (value.is_number_integer()) {
        if (value.is_number_unsigned()) return Rational(value.get<std::uint64_t>());
        return Rational(value.get<std::int64_t>());
    }
    if (value.is_number_float())
        throw DocumentError(where + ": decimal numbers are not allowed in exact mode; use \"num/den\"");
    if (value.is_string()) {
        try {
            return parse_rational(value.get<std::string>());
        } catch (const ParseError& e) {
            throw DocumentError(where + ": " + e.what());
        }
    }
    throw DocumentError(where + ": expected a number or a \"num/den\" string");
}

double scalar_from_json_float(const nlohmann::json& value, const std::string& where) {
    if (value.is_number()) {
        const double v = value.get<double>();
        if (!std::isfinite(v)) throw DocumentError(where + ": not finite");
        return v;
    }
    if (value.is_string()) {
        const auto s = value.get<std::string>();
        if (!is_rational_literal(s)) throw DocumentError(where + ": not a \"num/den\" string: '" + s + "'");
        try {
            return to_double(parse_rational(s));
        } catch (const ParseError& e) {
            throw DocumentError(where + ": " + e.what());
        }
    }
    throw DocumentError(where + ": expected a number or a \"num/den\" string");
}

std::pair<int, std::size_t> check_document_shape(const nlohmann::json& doc) {
    if (!doc.is_object()) throw DocumentError("curve document must be a JSON object");
    for (const auto& [key, _] : doc.items())
        if (!kFields.contains(key)) throw DocumentError("unknown field '" + key + "'");
    for (const auto& key : kFields)
        if (!doc.contains(key)) throw DocumentError("missing field '" + key + "'");
    if (integer_field(doc, "version") != kDocumentVersion)
        throw DocumentError("unsupported version; expected " + std::to_string(kDocumentVersion));
    const int degree = integer_field(doc, "degree");
    const int dimension = integer_field(doc, "dimension");
    if (degree < 0) throw DocumentError("degree must be >= 0");
    if (dimension < 1 || dimension > 3) throw DocumentError("dimension must be 1, 2 or 3");
    const auto& points = doc.at("points");
    if (!points.is_array()) throw DocumentError("points: expected an array");
    if (points.size() != static_cast<std::size_t>(degree) + 1)
        throw DocumentError("points: expected degree+1 = " + std::to_string(degree + 1) + " points, got " +
                            std::to_string(points.size()));
    return {degree, static_cast<std::size_t>(dimension)};
}

nlohmann::json parse_json_text(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DocumentError(std::string("invalid JSON: ") + e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path.string() + "'");
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("error writing '" + path.string() + "'");
}

}  // namespace pqbezier
