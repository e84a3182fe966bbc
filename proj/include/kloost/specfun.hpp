#pragma once

// Certified-precision reals and the half-integer order Bessel functions.
//
// BigReal is a ball: an MPFR midpoint plus an absolute error radius held as a
// long double (wide exponent range, no underflow for radii such as 2^-1000).
// Every operation widens the radius by the propagated input error and, when
// MPFR reports an inexact result, by one ulp of the result.

#include <mpfr.h>

#include <string>
#include <utility>

#include "kloost/exact_arith.hpp"

namespace kloost {

class BigReal {
 public:
  explicit BigReal(mpfr_prec_t precision = 128);
  BigReal(long value, mpfr_prec_t precision);
  BigReal(const BigInt& value, mpfr_prec_t precision);
  BigReal(const Rational& value, mpfr_prec_t precision);
  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  static BigReal pi(mpfr_prec_t precision);

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  long double error() const { return err_; }
  /// Adds to the error radius (e.g. a truncation bound).
  BigReal& widen(long double extra);
  /// Same value at a different precision (rounding error added if inexact).
  BigReal with_precision(mpfr_prec_t precision) const;

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
  /// Upper bound on |x| + error.
  long double magnitude() const;
  /// Decimal rendering with the given number of significant digits.
  std::string to_string(int digits = 40) const;
  /// Nearest integer to the midpoint (ties away from zero).
  BigInt round_nearest() const;

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  BigReal operator-() const;
  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  /// Throws std::domain_error if the divisor ball contains zero.
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  BigReal& operator+=(const BigReal& b) { return *this = *this + b; }
  BigReal& operator-=(const BigReal& b) { return *this = *this - b; }
  BigReal& operator*=(const BigReal& b) { return *this = *this * b; }

  friend BigReal sqrt(const BigReal& x);
  friend BigReal exp(const BigReal& x);
  friend BigReal sinh(const BigReal& x);
  friend BigReal cosh(const BigReal& x);
  friend BigReal sin(const BigReal& x);
  friend BigReal cos(const BigReal& x);
  friend BigReal abs(const BigReal& x);

 private:
  mpfr_t v_;
  long double err_ = 0;

  // Radius contribution of rounding |v_| at the current precision.
  void add_rounding(int ternary);
};

struct BigComplex {
  BigReal re;
  BigReal im;

  BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
  friend BigComplex operator*(const BigComplex& x, const BigComplex& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend BigComplex operator+(const BigComplex& x, const BigComplex& y) { return {x.re + y.re, x.im + y.im}; }
};

/// e(x) = exp(2 pi i x). Exact at multiples of 1/4; otherwise the phase is
/// reduced to a quarter period before evaluation.
BigComplex e_of(const RationalPhase& x, mpfr_prec_t precision);
BigComplex e_of(const BigReal& x);

/// I_{1/2}(z) = sqrt(2/(pi z)) sinh z, z > 0.
BigReal bessel_I_half(const BigReal& z);
/// I_{3/2}(z) = sqrt(2/(pi z)) (cosh z - sinh z / z), z > 0. Below z = 1e-2
/// the bracket is summed as its own power series.
BigReal bessel_I_3half(const BigReal& z);
/// J_{1/2}(z) = sqrt(2/(pi z)) sin z, z > 0.
BigReal bessel_J_half(const BigReal& z);
/// J_{3/2}(z) = sqrt(2/(pi z)) (sin z / z - cos z), z > 0.
BigReal bessel_J_3half(const BigReal& z);

/// Working precision for partition-type series at index n:
/// ceil(pi sqrt(2n/3) / ln 2) + 64 bits.
mpfr_prec_t auto_precision(Int n);

}  // namespace kloost
