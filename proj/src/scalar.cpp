#include "pqbezier/scalar.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

namespace pqbezier {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

boost::multiprecision::mpz_int parse_integer(std::string_view s) {
    std::string digits(s);
    if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
    return boost::multiprecision::mpz_int(digits);
}

}  // namespace

bool is_rational_literal(std::string_view text) {
    text = trim(text);
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return is_integer_literal(text);
    auto den = text.substr(slash + 1);
    if (!den.empty() && (den.front() == '-' || den.front() == '+')) return false;
    return is_integer_literal(text.substr(0, slash)) && is_integer_literal(den);
}

Rational parse_rational(std::string_view text) {
    auto s = trim(text);
    if (!is_rational_literal(s))
        throw ParseError("not a rational literal: '" + std::string(text) + "'");
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(s));
    auto num = parse_integer(s.substr(0, slash));
    auto den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    // The two-argument constructor canonicalizes.
    return Rational(num, den);
}

double parse_real(std::string_view text) {
    auto s = trim(text);
    if (is_rational_literal(s)) return to_double(parse_rational(s));
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value))
        throw ParseError("not a number: '" + std::string(text) + "'");
    return value;
}

std::string to_string(const Rational& value) {
    auto num = boost::multiprecision::numerator(value);
    auto den = boost::multiprecision::denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string to_string(double value) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    (void)ec;
    return std::string(buf.data(), ptr);
}

}  // namespace pqbezier
