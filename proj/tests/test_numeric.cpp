#include <doctest.h>

#include "weylchar/numeric.hpp"

using namespace weylchar;

TEST_CASE("fraction strings always carry a denominator") {
  CHECK(to_fraction_string(Rational(3)) == "3/1");
  CHECK(to_fraction_string(Rational(-6, 4)) == "-3/2");
}

TEST_CASE("parse_rational accepts fractions, integers and decimals exactly") {
  CHECK(parse_rational("7/21") == Rational(1, 3));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("-0.125") == Rational(-1, 8));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS(parse_rational(""));
}

TEST_CASE("factorial and binomial") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(20) == BigInt("2432902008176640000"));
  CHECK(factorial(25) == BigInt("15511210043330985984000000"));
  CHECK(binomial(10, 3) == 120);
  CHECK(binomial(5, 7) == 0);
  for (long n = 1; n <= 30; ++n) {
    BigInt row = 0;
    for (long k = 0; k <= n; ++k) row += binomial(n, k);
    CHECK(row == BigInt(1) << static_cast<unsigned>(n));
  }
}

TEST_CASE("Gaussian rationals form a field") {
  const GaussianRational i(0, 1);
  CHECK(i * i == GaussianRational(-1));
  const GaussianRational z(Rational(3, 2), Rational(-2));
  CHECK(z / z == GaussianRational(1));
  CHECK(z * z.conj() == GaussianRational(z.norm()));
  CHECK(ipow(i, -3) == i);
}

TEST_CASE("field determinant matches the Leibniz expansion") {
  std::vector<std::vector<Rational>> m{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  const Rational leibniz = Rational(2) * (3 * 4 - 1 * 1) - Rational(1) * (1 * 4 - 1 * 0);
  CHECK(field_determinant(m) == leibniz);
  std::vector<std::vector<Rational>> singular{{1, 2}, {2, 4}};
  CHECK(field_determinant(singular) == 0);
  std::vector<std::vector<Rational>> swap{{0, 1}, {1, 0}};
  CHECK(field_determinant(swap) == -1);
}
