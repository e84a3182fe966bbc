#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <vector>

#include "kloost/partitions.hpp"
#include "oracles.hpp"

using namespace kloost;

using oracle::brute_rank_counts;

TEST_CASE("pentagonal_p examples") {
  CHECK(pentagonal_p(0) == 1);
  CHECK(pentagonal_p(1) == 1);
  CHECK(pentagonal_p(4) == 5);
  CHECK(pentagonal_p(100) == BigInt("190569292"));
  CHECK(pentagonal_p(1000) == BigInt("24061467864032622473692149727991"));
  CHECK(pentagonal_p(-1) == 0);
}

TEST_CASE("rank table equals brute-force enumeration for n <= 40") {
  const auto brute = brute_rank_counts(40);
  const RankTable t = build_rank_table(40);
  for (Int n = 0; n <= 40; ++n) {
    Int total = 0;
    for (Int m = -n; m <= n; ++m) {
      REQUIRE(t.count(m, n) == brute[n][m + n]);
      total += brute[n][m + n];
    }
    REQUIRE(pentagonal_p(n) == total);
  }
}

TEST_CASE("rank table examples and invariants") {
  const RankTable t = build_rank_table(300);
  CHECK(t.max_n() == 300);
  CHECK(t.count(0, 1) == 1);
  CHECK(t.count(1, 1) == 0);
  CHECK(t.count(-1, 1) == 0);
  CHECK(t.count(5, 3) == 0);
  CHECK_THROWS_AS(t.count(0, 301), std::out_of_range);
  for (Int n = 0; n <= 300; ++n) {
    BigInt sum = 0;
    for (Int m = -n; m <= n; ++m) {
      sum += t.count(m, n);
      REQUIRE(t.count(m, n) == t.count(-m, n));
    }
    REQUIRE(sum == pentagonal_p(n));
  }
}

TEST_CASE("N(a, b; n)") {
  const RankTable t = build_rank_table(60);
  for (Int n = 1; n <= 60; ++n) {
    CHECK(N_abn(0, 1, n, t) == pentagonal_p(n));
    CHECK(N_abn(1, 3, n, t) == N_abn(2, 3, n, t));
    CHECK(N_abn(-1, 3, n, t) == N_abn(2, 3, n, t));
  }
  CHECK(N_abn(0, 2, 1, t) == 1);
  CHECK(N_abn(1, 2, 1, t) == 0);
  CHECK_THROWS_AS(N_abn(0, 2, 61, t), std::out_of_range);
}

TEST_CASE("A(a/b; n)") {
  const RankTable t = build_rank_table(100);
  for (Int n = 1; n <= 100; ++n) {
    CHECK(A_ab(0, 1, n, t).to_integer() == pentagonal_p(n));
    CHECK(A_ab(1, 2, n, t).to_integer() == N_abn(0, 2, n, t) - N_abn(1, 2, n, t));
    CHECK(A_ab(1, 3, n, t).to_integer() == N_abn(0, 3, n, t) - N_abn(1, 3, n, t));
    CHECK(A_ab(2, 3, n, t) == A_ab(1, 3, n, t));
    CHECK(rank_difference(2, n) == A_ab(1, 2, n, t).to_integer());
    CHECK(rank_difference(3, n) == A_ab(1, 3, n, t).to_integer());
  }
  CHECK_FALSE(A_ab(1, 5, 3, t).is_integer());
  CHECK(A_ab(1, 5, 4, t).to_integer() == 0);
  CHECK_THROWS_AS(A_ab(1, 5, 3, t).to_integer(), std::domain_error);
}

TEST_CASE("one-variable series at a root of unity matches the table") {
  const RankTable t = build_rank_table(200);
  for (Int b : {2, 3, 4, 5})
    for (Int a = 0; a < b; ++a) {
      const auto series = rank_series_at_root(a, b, 200);
      for (Int n = 0; n <= 200; ++n) REQUIRE(series[n] == A_ab(a, b, n, t));
    }
}

TEST_CASE("b N(a, b; n) = p(n) + sum_j zeta_b^{-aj} A(j/b; n) in Z[zeta_b]") {
  const RankTable t = build_rank_table(200);
  for (Int b : {2, 3}) {
    std::vector<std::vector<CyclotomicInt>> A(b);
    for (Int j = 1; j < b; ++j) A[j] = rank_series_at_root(j, b, 200);
    for (Int a = 0; a < b; ++a)
      for (Int n = 1; n <= 200; ++n) {
        CyclotomicInt rhs(b, pentagonal_p(n));
        for (Int j = 1; j < b; ++j) rhs += CyclotomicInt::zeta_power(b, -a * j) * A[j][n];
        REQUIRE(rhs == CyclotomicInt(b, N_abn(a, b, n, t) * b));
      }
  }
}

TEST_CASE("cyclotomic arithmetic") {
  CHECK(cyclotomic_polynomial(1) == std::vector<Int>{-1, 1});
  CHECK(cyclotomic_polynomial(3) == std::vector<Int>{1, 1, 1});
  CHECK(cyclotomic_polynomial(6) == std::vector<Int>{1, -1, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<Int>{1, 0, -1, 0, 1});
  const CyclotomicInt z = CyclotomicInt::zeta_power(3, 1);
  // zeta^2 = -1 - zeta
  CHECK(z * z == CyclotomicInt(3, -1) - z);
  CHECK(z * z * z == CyclotomicInt(3, 1));
  CHECK(CyclotomicInt::zeta_power(3, -1) == z * z);
  CHECK(CyclotomicInt::zeta_power(2, 1) == CyclotomicInt(2, -1));
  // 1 + zeta + ... + zeta^{b-1} = 0
  for (Int b : {2, 3, 4, 5, 6, 12}) {
    CyclotomicInt s(b, 0);
    for (Int k = 0; k < b; ++k) s += CyclotomicInt::zeta_power(b, k);
    CHECK(s == CyclotomicInt(b, 0));
  }
  CHECK(CyclotomicInt(3, 7).is_integer());
  CHECK(CyclotomicInt(3, 7).to_integer() == 7);
}

TEST_CASE("rank_difference range") {
  CHECK(rank_difference(2, 1) == 1);
  CHECK(rank_difference(3, 1) == 1);
  CHECK_THROWS_AS(rank_difference(5, 1), std::invalid_argument);
  CHECK_THROWS_AS(rank_difference(2, 100001), std::out_of_range);
}
