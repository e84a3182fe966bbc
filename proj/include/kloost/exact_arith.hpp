#pragma once

// Exact integer and rational primitives shared by every other module.

#include <cstdint>
#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace kloost {

using Int = std::int64_t;
using Rational = mpq_class;
using BigInt = mpz_class;

/// Thrown when an exact int64 computation would overflow. Results are never
/// silently wrapped.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);

/// Non-negative gcd; gcd(0, 0) = 0.
Int gcd(Int a, Int b);
/// Floor division and the matching non-negative remainder for b > 0.
Int floor_div(Int a, Int b);
Int mod(Int a, Int b);

/// An element of Q/Z, i.e. the unit complex number e(num/den).
/// Invariant: 0 <= num < den and gcd(num, den) = 1.
class RationalPhase {
 public:
  constexpr RationalPhase() = default;
  /// Reduces p/q mod 1. q must be non-zero.
  RationalPhase(Int p, Int q);
  explicit RationalPhase(const Rational& r);

  static RationalPhase zero() { return {}; }
  /// Phase of +1 (0) or -1 (1/2).
  static RationalPhase sign(int s);

  Int num() const { return num_; }
  Int den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  Rational to_rational() const { return Rational(num_, den_); }
  std::string str() const;

  RationalPhase operator-() const;
  RationalPhase& operator+=(const RationalPhase& o);
  RationalPhase& operator-=(const RationalPhase& o) { return *this += -o; }
  friend RationalPhase operator+(RationalPhase a, const RationalPhase& b) { return a += b; }
  friend RationalPhase operator-(RationalPhase a, const RationalPhase& b) { return a -= b; }
  /// k-fold sum (phase of z^k).
  friend RationalPhase operator*(Int k, const RationalPhase& p);

  friend bool operator==(const RationalPhase&, const RationalPhase&) = default;
  /// Orders by numeric value of num/den in [0, 1).
  friend std::strong_ordering operator<=>(const RationalPhase& a, const RationalPhase& b);

 private:
  Int num_ = 0;
  Int den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const RationalPhase& p);

/// Extended Kronecker symbol (a/n) with the conventions
///   (a/0) = 1 if a = +-1 else 0,
///   (a/-1) = -1 if a < 0 else 1,
///   (a/2) = 0 for even a, 1 for a = +-1 mod 8, -1 for a = +-3 mod 8.
int kronecker(Int a, Int n);

/// epsilon_d for odd d: phase 0 (value 1) if d = 1 mod 4, 1/4 (value i) if d = 3 mod 4.
RationalPhase epsilon_d(Int d);

/// sum_{e | ell} e^k, exact (k may be negative).
Rational sigma_k(Int k, Int ell);
/// Number of positive divisors.
Int sigma0(Int ell);

/// x = t * u^2 * w^2 with t square-free, every prime of u dividing M, gcd(w, M) = 1.
struct SquareDecomposition {
  Int t = 1;
  Int u = 1;
  Int w = 1;
  friend bool operator==(const SquareDecomposition&, const SquareDecomposition&) = default;
};

SquareDecomposition square_decompose(Int x, Int M);

/// d^{-1} mod c in [0, c); throws std::invalid_argument if gcd(d, c) != 1.
Int mod_inverse(Int d, Int c);

/// Euler phi by trial division.
Int euler_phi(Int n);

}  // namespace kloost
