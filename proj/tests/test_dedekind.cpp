#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kloost/dedekind.hpp"

using namespace kloost;

TEST_CASE("sawtooth") {
  CHECK(sawtooth(Rational(0)) == 0);
  CHECK(sawtooth(Rational(1, 2)) == 0);
  CHECK(sawtooth(Rational(1, 3)) == Rational(-1, 6));
  CHECK(sawtooth(Rational(-1, 3)) == Rational(1, 6));
  CHECK(sawtooth(Rational(7, 4)) == Rational(1, 4));
  CHECK(sawtooth(Rational(-5)) == 0);
}

TEST_CASE("definitional sum examples") {
  CHECK(dedekind_def(0, 1).value == 0);
  CHECK(dedekind_def(1, 2).value == 0);
  CHECK(dedekind_def(1, 3).value == Rational(1, 18));
}

TEST_CASE("fast evaluation examples") {
  CHECK(dedekind_fast(1, 1).value == 0);
  CHECK(dedekind_fast(1, 3).value == Rational(1, 18));
  CHECK(dedekind_fast(5, 7).value == dedekind_def(5, 7).value);
  CHECK_THROWS_AS(dedekind_fast(2, 4), std::invalid_argument);
}

TEST_CASE("fast equals definition for all coprime 1 <= d < c <= 300") {
  for (Int c = 2; c <= 300; ++c) {
    for (Int d = 1; d < c; ++d) {
      if (gcd(d, c) != 1) continue;
      const Rational s = dedekind_def(d, c).value;
      REQUIRE(dedekind_fast(d, c).value == s);
      const Rational twelve_cs = 12 * c * s;
      REQUIRE(twelve_cs.get_den() == 1);
      REQUIRE(dedekind_times_6c(d, c) * 2 == twelve_cs.get_num());
    }
  }
}

TEST_CASE("periodicity and oddness") {
  for (Int c = 1; c <= 60; ++c) {
    for (Int d = -c; d <= 2 * c; ++d) {
      REQUIRE(dedekind_def(d + c, c).value == dedekind_def(d, c).value);
      REQUIRE(dedekind_def(-d, c).value == -dedekind_def(d, c).value);
      if (gcd(d, c) == 1) REQUIRE(dedekind_fast(d, c).value == dedekind_def(d, c).value);
    }
  }
}

TEST_CASE("reciprocity at large coprime moduli") {
  // s(d,c) + s(c,d) = -1/4 + (d/c + c/d + 1/(cd)) / 12
  const Int pairs[][2] = {{1000003, 999983}, {123456789, 987654321 - 1}, {7, 1000000007}};
  for (const auto& p : pairs) {
    const Int d = p[0], c = p[1];
    if (gcd(d, c) != 1) continue;
    const Rational lhs = dedekind_fast(d, c).value + dedekind_fast(c, d).value;
    Rational rhs = Rational(-1, 4) + (Rational(d, c) + Rational(c, d) + Rational(1, 1) / (Rational(c) * d)) / 12;
    rhs.canonicalize();
    CHECK(lhs == rhs);
  }
}
