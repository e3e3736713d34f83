#include "doctest.h"

#include <sstream>

#include "rwlab/rational.hpp"

using rwlab::Rational;

TEST_CASE("rational keeps lowest terms with a positive denominator") {
  const Rational r(6, -8);
  CHECK(r.str() == "-3/4");
  CHECK(Rational(0).str() == "0/1");
  CHECK(Rational(4).str() == "4/1");
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("-2/6") == Rational(-1, 3));
}

TEST_CASE("rational parse rejects garbage") {
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("a/2"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("rational arithmetic and ordering are exact") {
  const Rational third(1, 3);
  CHECK(third + third + third == Rational(1));
  CHECK(Rational(1, 10) + Rational(2, 10) == Rational(3, 10));
  CHECK(Rational(1, 3) < Rational(34, 100));
  CHECK(Rational(3, 4) * Rational(4, 3) == Rational(1));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);

  std::ostringstream os;
  os << Rational(22, 7);
  CHECK(os.str() == "22/7");
}

TEST_CASE("rational survives values far past 64 bits") {
  Rational big(1);
  for (int k = 0; k < 40; ++k) big *= Rational(1000003, 999983);
  Rational back = big;
  for (int k = 0; k < 40; ++k) back /= Rational(1000003, 999983);
  CHECK(back == Rational(1));
  CHECK(Rational::parse(big.str()) == big);
}
