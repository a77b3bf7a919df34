#include "doctest.h"
#include "pqbezier/point.hpp"
#include "pqbezier/scalar.hpp"

using namespace pqbezier;

TEST_CASE("rational literals parse to lowest terms") {
    CHECK(parse_rational("6/8") == Rational(3, 4));
    CHECK(to_string(parse_rational("6/8")) == "3/4");
    CHECK(to_string(parse_rational("-10/4")) == "-5/2");
    CHECK(to_string(parse_rational("4/2")) == "2");
    CHECK(to_string(parse_rational(" 7 ")) == "7");
    CHECK(parse_rational("+3/9") == Rational(1, 3));
    CHECK(to_string(parse_rational("123456789012345678901234567890/3")) == "41152263004115226300411522630");
}

TEST_CASE("malformed rational literals are rejected") {
    CHECK_THROWS_AS(parse_rational("0.5"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("1//2"), ParseError);
}

TEST_CASE("parse_real accepts decimals and rational literals") {
    CHECK(parse_real("0.375") == 0.375);
    CHECK(parse_real("3/8") == 0.375);
    CHECK(parse_real("-2") == -2.0);
    CHECK(parse_real("1e-3") == 1e-3);
    CHECK_THROWS_AS(parse_real("abc"), ParseError);
    CHECK_THROWS_AS(parse_real("1.5x"), ParseError);
    CHECK_THROWS_AS(parse_real("inf"), ParseError);
}

TEST_CASE("doubles print in shortest round-trip form") {
    CHECK(to_string(0.375) == "0.375");
    CHECK(to_string(0.1) == "0.1");
    CHECK(to_string(1.0 / 3.0) == "0.3333333333333333");
    CHECK(parse_real(to_string(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("ipow handles negative exponents and rejects 0^-k") {
    CHECK(ipow(Rational(2), -3) == Rational(1, 8));
    CHECK(ipow(Rational(2, 3), 2) == Rational(4, 9));
    CHECK(ipow(2.0, 0) == 1.0);
    CHECK(ipow(Rational(0), 0) == Rational(1));
    CHECK_THROWS_AS(ipow(Rational(0), -1), std::domain_error);
}

TEST_CASE("points") {
    Point<Rational> a{Rational(1), Rational(2)};
    Point<Rational> b{Rational(3), Rational(-1)};
    CHECK(a + b == Point<Rational>{Rational(4), Rational(1)});
    CHECK((b - a) * Rational(1, 2) == Point<Rational>{Rational(1), Rational(-3, 2)});
    CHECK(-a == Point<Rational>{Rational(-1), Rational(-2)});
    CHECK_THROWS_AS(a + Point<Rational>{Rational(1)}, std::invalid_argument);
    CHECK(to_double(b)[1] == -1.0);
}
