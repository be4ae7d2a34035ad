#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "shopd/rational.hpp"

using shopd::Rational;

TEST_CASE("construction reduces to canonical form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(-3).str() == "-3");
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("parse") {
  CHECK(Rational::parse("3/6") == Rational(1, 2));
  CHECK(Rational::parse("-7") == Rational(-7));
  CHECK(Rational::parse("0/5").is_zero());
  CHECK_THROWS(Rational::parse("x"));
}

TEST_CASE("field operations") {
  Rational a(3, 4), b(-2, 3);
  CHECK(a + b == Rational(1, 12));
  CHECK(a - b == Rational(17, 12));
  CHECK(a * b == Rational(-1, 2));
  CHECK(a / b == Rational(-9, 8));
  CHECK((-a) == Rational(-3, 4));
  CHECK(a.inverse() == Rational(4, 3));
  CHECK_THROWS(Rational(0).inverse());
}

TEST_CASE("overflow promotes to big and demotes when it fits") {
  Rational big(INT64_MAX);
  Rational sq = big * big;  // exceeds int64
  CHECK(!sq.is_small());
  CHECK(sq.to_mpq() == mpq_class(Rational(INT64_MAX).to_mpq() * Rational(INT64_MAX).to_mpq()));
  Rational back = sq / big;
  CHECK(back.is_small());
  CHECK(back == big);
  // big +- small round trips
  Rational c = sq - sq;
  CHECK(c.is_zero());
  CHECK(c.is_small());
}

TEST_CASE("agrees with GMP on random values") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<long long> num(-1000000, 1000000);
  std::uniform_int_distribution<long long> den(1, 1000000);
  for (int it = 0; it < 3000; ++it) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    mpq_class qa = a.to_mpq(), qb = b.to_mpq();
    CHECK((a + b).to_mpq() == mpq_class(qa + qb));
    CHECK((a - b).to_mpq() == mpq_class(qa - qb));
    CHECK((a * b).to_mpq() == mpq_class(qa * qb));
    if (!b.is_zero()) CHECK((a / b).to_mpq() == mpq_class(qa / qb));
    CHECK((a < b) == (qa < qb));
  }
}
