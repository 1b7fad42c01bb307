#include <bjortho/rational.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace bjortho;

TEST_CASE("parsing canonicalizes fractions") {
    CHECK(parse_rational("2/4") == Rational(1, 2));
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(parse_rational("-10") == Rational(-10));
    CHECK(parse_rational("0/7") == Rational(0));
    CHECK(parse_rational(" 3/6 ") == Rational(1, 2));
}

TEST_CASE("parse failures are reported, not mangled") {
    CHECK_FALSE(try_parse_rational("1/0"));
    CHECK_FALSE(try_parse_rational("x"));
    CHECK_FALSE(try_parse_rational("1.5"));
    CHECK_FALSE(try_parse_rational(""));
    CHECK_FALSE(try_parse_rational("1/2/3"));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
}

TEST_CASE("to_string round-trips") {
    for (const char* text : {"0", "1", "-1", "1/2", "-3/2", "22/7", "-1000000000000000001/3"}) {
        const Rational q = parse_rational(text);
        CHECK(parse_rational(to_string(q)) == q);
    }
    CHECK(to_string(Rational(1, 2)) == "1/2");
    CHECK(to_string(Rational(-10)) == "-10");
}

TEST_CASE("exact arithmetic has no drift") {
    const Rational third(1, 3);
    const Rational sixth(1, 6);
    CHECK(third + sixth == Rational(1, 2));
    Rational acc = 0;
    for (int i = 0; i < 300; ++i) acc += Rational(1, 300);
    CHECK(acc == 1);
    CHECK(Rational(1, 3) * 3 == 1);
}

TEST_CASE("sign and abs") {
    CHECK(sign(Rational(-7, 2)) == -1);
    CHECK(sign(Rational(0)) == 0);
    CHECK(sign(Rational(5)) == 1);
    CHECK(abs(Rational(-7, 2)) == Rational(7, 2));
}

TEST_CASE("to_double approximates") {
    CHECK(to_double(Rational(1, 2)) == 0.5);
    CHECK(to_double(Rational(-3)) == -3.0);
}
