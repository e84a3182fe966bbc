#pragma once

// Generalized Kloosterman sums S(m, n, c, nu), the classical A_c(n) and the
// standard S(m, n, c), all built exactly as multisets of roots of unity.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "kloost/exact_arith.hpp"
#include "kloost/multiplier.hpp"
#include "kloost/specfun.hpp"

namespace kloost {

/// Identifies a sum: multiplier id ("standard" and "A" for the classical
/// sums), the two indices and the modulus.
struct SumKey {
  std::string multiplier;
  Int m = 0;
  Int n = 0;
  Int c = 1;
  friend bool operator==(const SumKey&, const SumKey&) = default;
  friend auto operator<=>(const SumKey&, const SumKey&) = default;
};

/// n~ = n - alpha.
struct TildeIndex {
  Int n = 0;
  Rational alpha;
  Rational tilde;

  TildeIndex(Int n_, const Rational& alpha_);
};

/// A finite sum sum_j w_j e(phase_j), kept as a multiset {phase -> weight}.
/// Terms are sorted by ascending phase, equal phases merged, zero weights
/// dropped; two sums are equal iff their multisets agree.
class ExpSum {
 public:
  struct Term {
    RationalPhase phase;
    Int weight = 1;
    friend bool operator==(const Term&, const Term&) = default;
  };

  ExpSum() = default;
  explicit ExpSum(std::vector<Term> terms, SumKey key = {});
  /// As above but with an explicit summand count (used when reloading).
  ExpSum(std::vector<Term> terms, SumKey key, Int summands);

  const std::vector<Term>& terms() const { return terms_; }
  const SumKey& key() const { return key_; }
  void set_key(SumKey key) { key_ = std::move(key); }
  /// Number of summands (group elements) that went into the sum.
  Int summands() const { return summands_; }
  /// sum |w_j| over the merged terms.
  Int total_weight() const;

  /// Complex conjugate: every phase negated.
  ExpSum conj() const;
  /// Multiplies the whole sum by e(shift).
  ExpSum rotated(const RationalPhase& shift) const;

  /// Multiset equality (metadata ignored).
  friend bool operator==(const ExpSum& a, const ExpSum& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<Term> terms_;
  SumKey key_;
  Int summands_ = 0;
};

/// All (a b; c d) with 0 <= a, d < c, gcd(d, c) = 1, a = d^{-1} mod c,
/// b = (ad - 1)/c. Exactly phi(c) matrices. Requires N | c.
std::vector<GammaMatrix> enumerate_gamma(Int c, Int N);

/// S(m,n,c,nu) = sum conj(nu(g)) e((m~ a + n~ d)/c). Requires level | c.
ExpSum generalized_S(Int m, Int n, Int c, const MultiplierSpec& spec);
/// S(m,n,c) = sum_{d mod c}* e((m dbar + n d)/c).
ExpSum standard_S(Int m, Int n, Int c);
/// A_c(n) = sum_{d mod c}* e^{pi i s(d,c)} e(-dn/c).
ExpSum classic_A(Int c, Int n);

/// Numeric value with a certified absolute bound on each component of
/// total_weight * 2^{1-p}. Summation runs in ascending phase order; phases
/// p and 1-p are combined into one cosine/sine evaluation.
struct EvaluatedSum {
  BigComplex value;
  long double error = 0;
  Int nterms = 0;
};

EvaluatedSum evaluate(const ExpSum& sum, mpfr_prec_t precision_bits);

}  // namespace kloost
