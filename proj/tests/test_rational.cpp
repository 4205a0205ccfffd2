#include <doctest.h>

#include "lca/rational.hpp"

using lca::BigInt;
using lca::Rational;

TEST_CASE("rationals normalize on construction") {
  Rational q(BigInt(6), BigInt(-4));
  CHECK(q.numerator() == -3);
  CHECK(q.denominator() == 2);
  CHECK(Rational(BigInt(0), BigInt(7)) == Rational(0));
  CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), lca::Error);
}

TEST_CASE("arithmetic stays exact and normalized") {
  Rational a(BigInt(1), BigInt(3));
  Rational b(BigInt(1), BigInt(6));
  CHECK((a + b) == Rational(BigInt(1), BigInt(2)));
  CHECK((a - b) == Rational(BigInt(1), BigInt(6)));
  CHECK((a * b) == Rational(BigInt(1), BigInt(18)));
  CHECK((a / b) == Rational(2));
  CHECK_THROWS_AS(a / Rational(0), lca::Error);
  CHECK((-a).sign() == -1);
}

TEST_CASE("arbitrary precision survives large products") {
  Rational big(BigInt("123456789123456789123456789"), BigInt(1));
  Rational r = big * big;
  CHECK(r.numerator() == BigInt("15241578780673678546105778281054720515622620750190521"));
}

TEST_CASE("parse accepts num and num/den forms") {
  CHECK(*Rational::parse("5") == Rational(5));
  CHECK(*Rational::parse("-5") == Rational(-5));
  CHECK(*Rational::parse("2/4") == Rational(BigInt(1), BigInt(2)));
  CHECK(*Rational::parse("-6/4") == Rational(BigInt(-3), BigInt(2)));
  CHECK(!Rational::parse(""));
  CHECK(!Rational::parse("1/0"));
  CHECK(!Rational::parse("x"));
  CHECK(!Rational::parse("1.5"));
}

TEST_CASE("str round-trips through parse") {
  for (const char* text : {"0", "7", "-3", "1/2", "-22/7"}) {
    Rational q = *Rational::parse(text);
    CHECK(q.str() == text);
    CHECK(*Rational::parse(q.str()) == q);
  }
}

TEST_CASE("factorial and binomial helpers") {
  CHECK(lca::factorial(0) == Rational(1));
  CHECK(lca::factorial(5) == Rational(120));
  CHECK(lca::binomial(5, 2) == Rational(10));
  CHECK(lca::binomial(3, 5) == Rational(0));
  CHECK(lca::binomial(4, 0) == Rational(1));
}
