#pragma once

// Scalar types shared by every (p,q) computation.
//
// Two arithmetic modes exist: exact rationals (GMP-backed, always in lowest
// terms with a positive denominator) and IEEE doubles. The mode is a template
// parameter, so a single computation can never mix the two.

#include <boost/multiprecision/gmp.hpp>

#include <concepts>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pqbezier {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, Rational>;

template <Scalar T>
inline constexpr bool is_exact_v = std::same_as<T, Rational>;

enum class ArithmeticMode { exact, floating };

template <Scalar T>
constexpr ArithmeticMode mode_of() {
    return is_exact_v<T> ? ArithmeticMode::exact : ArithmeticMode::floating;
}

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Integer power; negative exponents divide. Throws std::domain_error for 0^(-k).
template <Scalar T>
T ipow(const T& base, int exponent) {
    if (exponent < 0) {
        if (base == T{0}) throw std::domain_error("zero raised to a negative power");
        return T{1} / ipow(base, -exponent);
    }
    T result{1};
    T b = base;
    unsigned e = static_cast<unsigned>(exponent);
    while (e != 0) {
        if (e & 1u) result *= b;
        e >>= 1u;
        if (e != 0) b *= b;
    }
    return result;
}

/// Parses "num/den" or an integer literal. Decimal points are rejected so an
/// exact computation never silently starts from a rounded value.
Rational parse_rational(std::string_view text);

/// Parses a decimal literal or "num/den" into a double.
double parse_real(std::string_view text);

/// True when `text` is an integer or "num/den" literal.
bool is_rational_literal(std::string_view text);

/// Lowest-terms "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& value);

/// Shortest representation that round-trips to the same double.
std::string to_string(double value);

inline double to_double(double value) { return value; }
inline double to_double(const Rational& value) { return value.convert_to<double>(); }

template <Scalar T>
T from_rational(const Rational& value) {
    if constexpr (is_exact_v<T>)
        return value;
    else
        return to_double(value);
}

}  // namespace pqbezier
