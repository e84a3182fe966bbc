#pragma once

// Exact combinatorial ground truth: p(n), the rank counts N(m, n) and the
// rank generating function at roots of unity.

#include <string>
#include <vector>

#include "kloost/exact_arith.hpp"

namespace kloost {

/// p(n) by Euler's pentagonal recurrence, memoized and thread-safe.
BigInt pentagonal_p(Int n);

/// Element of Z[zeta_b], kept reduced modulo the b-th cyclotomic polynomial:
/// coefficients of 1, zeta, ..., zeta^{phi(b)-1}. For b = 3 this is the pair
/// x + y zeta with zeta^2 = -1 - zeta.
class CyclotomicInt {
 public:
  explicit CyclotomicInt(Int order = 1, const BigInt& value = 0);
  static CyclotomicInt zeta_power(Int order, Int k);
  /// Reduces a group-ring vector sum_k g[k] zeta^k (size = order).
  static CyclotomicInt from_group_ring(Int order, const std::vector<BigInt>& g);

  Int order() const { return order_; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  bool is_integer() const;
  /// Throws std::domain_error unless is_integer().
  BigInt to_integer() const;
  std::string str() const;

  CyclotomicInt& operator+=(const CyclotomicInt& o);
  CyclotomicInt& operator-=(const CyclotomicInt& o);
  friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }
  friend CyclotomicInt operator-(CyclotomicInt a, const CyclotomicInt& b) { return a -= b; }
  friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b);
  friend bool operator==(const CyclotomicInt&, const CyclotomicInt&) = default;

 private:
  Int order_;
  std::vector<BigInt> coeffs_;
};

/// Integer coefficients of Phi_b, lowest degree first.
std::vector<Int> cyclotomic_polynomial(Int b);

/// N(m, n) for 0 <= n <= max_n and |m| <= n, read off the two-variable
/// expansion of 1 + sum_k q^{k^2} / ((wq; q)_k (w^{-1} q; q)_k).
class RankTable {
 public:
  RankTable() = default;
  Int max_n() const { return max_n_; }
  /// N(m, n); zero for |m| > n. Throws std::out_of_range if n > max_n.
  BigInt count(Int m, Int n) const;
  const std::vector<BigInt>& row(Int n) const;

 private:
  friend RankTable build_rank_table(Int max_n);
  Int max_n_ = -1;
  std::vector<std::vector<BigInt>> rows_;  // rows_[n][m + n]
};

RankTable build_rank_table(Int max_n);

/// Number of partitions of n with rank = a (mod b).
BigInt N_abn(Int a, Int b, Int n, const RankTable& table);
/// A(a/b; n) = sum_m N(m, n) zeta_b^{am} in Z[zeta_b].
CyclotomicInt A_ab(Int a, Int b, Int n, const RankTable& table);

/// A(a/b; n) for 0 <= n <= max_n, from the one-variable series R(zeta_b^a; q)
/// expanded directly over Z[zeta_b] (independent of the rank table).
std::vector<CyclotomicInt> rank_series_at_root(Int a, Int b, Int max_n);

/// Memoized A(1/b; n) as an integer for b in {2, 3}. Throws std::out_of_range
/// beyond n = 100000.
BigInt rank_difference(Int b, Int n);

}  // namespace kloost
