#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "kloost/dedekind.hpp"
#include "kloost/partitions.hpp"
#include "kloost/series.hpp"

using namespace kloost;

namespace {

// Textbook form of the c-th term of p(n), in long double:
//   (2 pi / (24n-1)^{3/4}) (A_c(n) / c) I_{3/2}(pi sqrt(24n-1) / (6c)),
// A_c(n) = sum_d exp(pi i s(d,c) - 2 pi i d n / c) from the definitional Dedekind sum.
long double textbook_term(Int n, Int c) {
  const long double pi = std::numbers::pi_v<long double>;
  long double A = 0;
  for (Int d = 0; d < c; ++d) {
    if (gcd(d, c) != 1) continue;
    const long double s = mpq_get_d(dedekind_def(d, c).value.get_mpq_t());
    A += std::cos(pi * s - 2 * pi * static_cast<long double>(d * n % c) / c);
  }
  const long double D = 24.0L * n - 1;
  const long double z = pi * std::sqrt(D) / (6 * c);
  const long double i32 = std::sqrt(2 / (pi * z)) * (std::cosh(z) - std::sinh(z) / z);
  return 2 * pi / std::pow(D, 0.75L) * A / c * i32;
}

}  // namespace

TEST_CASE("rademacher_p examples") {
  const SeriesResult four = rademacher_p(4, cutoff_for(5, 4), 0);
  CHECK(four.cutoff_c == 10);
  CHECK(four.verdict == RoundingVerdict::Rounded);
  CHECK(four.rounded == 5);
  CHECK(rademacher_p(1, 10, 0).rounded == 1);
  const SeriesResult hundred = rademacher_p(100, 50, 0);
  CHECK(hundred.verdict == RoundingVerdict::Rounded);
  CHECK(hundred.rounded == pentagonal_p(100));
  CHECK(hundred.precision == auto_precision(100));
  CHECK_THROWS_AS(rademacher_p(0, 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(rademacher_p(5, 0, 0), std::invalid_argument);
}

TEST_CASE("starved precision is reported, never guessed") {
  const SeriesResult r = rademacher_p(400, 100, 53);
  CHECK(r.verdict == RoundingVerdict::Indeterminate);
  CHECK(r.value.error() > 0.25L);
}

TEST_CASE("terms agree with the textbook formula") {
  for (Int n : {1, 7, 20, 61}) {
    const SeriesResult r = rademacher_p(n, 40, 0);
    long double partial = 0;
    for (const TermRecord& t : r.term_records) {
      const long double want = textbook_term(n, t.c);
      partial += want;
      CHECK(std::fabs(t.term.to_long_double() - want) <= 1e-14L * (1 + std::fabs(want)));
    }
    CHECK(std::fabs(r.value.to_long_double() - partial) < 1e-12L * (1 + std::fabs(partial)));
  }
}

TEST_CASE("sinh-derivative form agrees with the Bessel form at 10 (n, c) pairs") {
  const std::pair<Int, Int> pairs[] = {{1, 1}, {1, 2}, {4, 3}, {10, 5}, {25, 7},
                                       {50, 1}, {100, 12}, {200, 30}, {333, 17}, {500, 60}};
  for (const auto& [n, c] : pairs) {
    const SeriesResult r = rademacher_p(n, c, 0);
    const BigReal& bessel_form = r.term_records.back().term;
    const BigReal sinh_form = rademacher_term_sinh_form(n, c, r.precision);
    const BigReal diff = bessel_form - sinh_form;
    CAPTURE(n);
    CAPTURE(c);
    CHECK(std::fabs(diff.to_long_double()) <= diff.error() + std::ldexp(1.0L, 20 - static_cast<int>(r.precision)));
  }
}

TEST_CASE("record bookkeeping: value is the sum of the terms, imaginary part vanishes") {
  for (int j = 1; j <= 3; ++j)
    for (Int n : {5, 23, 80}) {
      const SeriesResult r = series_j(j, n, 40, 0);
      BigReal sum(0L, r.value.precision());
      for (const TermRecord& t : r.term_records) {
        sum += t.term;
        if (j == 2) CHECK(t.c % 2 == 0);
        if (j == 3) CHECK(t.c % 3 == 0);
      }
      const BigReal d = sum - r.value;
      CHECK(std::fabs(d.to_long_double()) <= d.error());
      CHECK(std::fabs(r.imag.to_long_double()) <= r.imag.error());
      CHECK(r.verdict != RoundingVerdict::Failed);
    }
}

TEST_CASE("andrews_dragonette examples") {
  for (Int n : {1, 2, 3, 10}) {
    const SeriesResult r = andrews_dragonette(n, cutoff_for(10, n), 0);
    CHECK(r.rounded == rank_difference(2, n));
  }
  const SeriesResult five = andrews_dragonette(5, 40, 0);
  CHECK(std::fabs(five.imag.to_long_double()) <= five.imag.error());
}

TEST_CASE("rank_mod3_exact examples") {
  CHECK(rank_mod3_exact(1, cutoff_for(10, 1), 0).rounded == 1);
  CHECK(rank_mod3_exact(3, cutoff_for(10, 3), 0).rounded == rank_difference(3, 3));
  for (Int n : {10, 50, 150}) {
    const SeriesResult r = rank_mod3_exact(n, cutoff_for(10, n), 0);
    CHECK(r.verdict == RoundingVerdict::Rounded);
    CHECK(r.rounded == rank_difference(3, n));
  }
}

TEST_CASE("Bessel factors decrease once c exceeds sqrt(24n - 1)") {
  for (int j = 1; j <= 3; ++j) {
    const Int n = 60;
    const SeriesResult r = series_j(j, n, 120, 0);
    const double start = std::sqrt(24.0 * n - 1);
    const BigReal* prev = nullptr;
    for (const TermRecord& t : r.term_records) {
      if (static_cast<double>(t.c) <= start) continue;
      if (prev) CHECK(t.bessel.to_double() < prev->to_double());
      prev = &t.bessel;
    }
  }
}

TEST_CASE("tail_R") {
  const BigReal x(50L, 64);
  const BigReal r = tail_R(1, 100, x, 0);
  CHECK(std::fabs(r.to_double()) <= 0.5);
  const SeriesResult full = rademacher_p(100, 50, 0);
  CHECK(std::fabs((r - (BigReal(pentagonal_p(100), full.precision) - full.value)).to_double()) < 1e-20);
  // once the partial sum is within 1e-6 of an integer the tail is that small too
  const SeriesResult close = rademacher_p(5, 2000, 0);
  REQUIRE(close.rounding_gap.to_double() < 1e-6);
  const BigReal far = tail_R(1, 5, BigReal(2000L, 64), 0);
  CHECK(std::fabs(far.to_double()) < 1e-6);
  CHECK_THROWS_AS(tail_R(1, 10, BigReal(Rational(1, 2), 64), 0), std::invalid_argument);
  CHECK_THROWS_AS(tail_R(4, 10, x, 0), std::invalid_argument);
  CHECK_THROWS_AS(series_oracle(2, 200000), std::out_of_range);
}

TEST_CASE("threads do not change the result") {
  SeriesOptions one, many;
  many.threads = 4;
  for (int j = 1; j <= 3; ++j) {
    const SeriesResult a = series_j(j, 150, 130, 0, one);
    const SeriesResult b = series_j(j, 150, 130, 0, many);
    CHECK(a.value.to_string(60) == b.value.to_string(60));
    CHECK(a.value.error() == b.value.error());
  }
}

TEST_CASE("cutoff_for") {
  CHECK(cutoff_for(5, 4) == 10);
  CHECK(cutoff_for(5, 2) == 8);
  CHECK(cutoff_for(10, 100) == 100);
  CHECK(cutoff_for(10, 101) == 101);
}
