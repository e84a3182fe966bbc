#include "kloost/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

namespace kloost {

namespace {

// Upward padding for radius arithmetic carried out in long double.
long double pad(long double x) { return x * (1.0L + 0x1p-60L); }

long double abs_upper(mpfr_srcptr v) {
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(v));
  mpfr_abs(t, v, MPFR_RNDU);
  long double r = mpfr_get_ld(t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

mpfr_prec_t max_prec(const BigReal& a, const BigReal& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

BigReal::BigReal(mpfr_prec_t precision) {
  mpfr_init2(v_, precision);
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(long value, mpfr_prec_t precision) {
  mpfr_init2(v_, precision);
  add_rounding(mpfr_set_si(v_, value, MPFR_RNDN));
}

BigReal::BigReal(const BigInt& value, mpfr_prec_t precision) {
  mpfr_init2(v_, precision);
  add_rounding(mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN));
}

BigReal::BigReal(const Rational& value, mpfr_prec_t precision) {
  mpfr_init2(v_, precision);
  add_rounding(mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN));
}

BigReal::BigReal(const BigReal& other) : err_(other.err_) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept : err_(other.err_) {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
    err_ = other.err_;
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  if (this != &other) {
    mpfr_swap(v_, other.v_);
    err_ = other.err_;
  }
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

void BigReal::add_rounding(int ternary) {
  if (ternary == 0) return;
  err_ = pad(err_ + abs_upper(v_) * std::ldexp(1.0L, 1 - static_cast<int>(precision())));
}

BigReal BigReal::pi(mpfr_prec_t precision) {
  BigReal r(precision);
  r.add_rounding(mpfr_const_pi(r.v_, MPFR_RNDN));
  return r;
}

BigReal& BigReal::widen(long double extra) {
  err_ = pad(err_ + extra);
  return *this;
}

BigReal BigReal::with_precision(mpfr_prec_t precision) const {
  BigReal r(precision);
  r.err_ = err_;
  r.add_rounding(mpfr_set(r.v_, v_, MPFR_RNDN));
  return r;
}

long double BigReal::magnitude() const { return pad(abs_upper(v_) + err_); }

std::string BigReal::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

BigInt BigReal::round_nearest() const {
  mpfr_t t;
  mpfr_init2(t, precision());
  mpfr_round(t, v_);
  BigInt z;
  mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
  mpfr_clear(t);
  return z;
}

BigReal BigReal::operator-() const {
  BigReal r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r(max_prec(a, b));
  r.err_ = a.err_ + b.err_;
  r.add_rounding(mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN));
  return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r(max_prec(a, b));
  r.err_ = a.err_ + b.err_;
  r.add_rounding(mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN));
  return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r(max_prec(a, b));
  r.err_ = pad(abs_upper(a.v_) * b.err_ + abs_upper(b.v_) * a.err_ + a.err_ * b.err_);
  r.add_rounding(mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN));
  return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  const long double bmag = abs_upper(b.v_);
  if (!(bmag > b.err_)) throw std::domain_error("BigReal: division by a ball containing zero");
  BigReal r(max_prec(a, b));
  int t = mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  const long double q = abs_upper(r.v_);
  // Lower bound on |b| - err, shrunk slightly to stay conservative.
  const long double denom = (bmag - b.err_) * (1.0L - 0x1p-58L);
  r.err_ = pad((a.err_ + q * b.err_) / denom);
  r.add_rounding(t);
  return r;
}

BigReal sqrt(const BigReal& x) {
  if (mpfr_sgn(x.v_) < 0 || (x.err_ > 0 && !(abs_upper(x.v_) > x.err_)))
    throw std::domain_error("BigReal: sqrt of a ball reaching below zero");
  BigReal r(x.precision());
  int t = mpfr_sqrt(r.v_, x.v_, MPFR_RNDN);
  if (x.err_ > 0) {
    // |sqrt(x') - sqrt(x)| <= |x' - x| / sqrt(x).
    r.err_ = pad(x.err_ / std::sqrt(abs_upper(x.v_) * (1.0L - 0x1p-58L)) * (1.0L + 0x1p-58L));
  }
  r.add_rounding(t);
  return r;
}

BigReal exp(const BigReal& x) {
  BigReal r(x.precision());
  int t = mpfr_exp(r.v_, x.v_, MPFR_RNDN);
  if (x.err_ > 0) r.err_ = pad(abs_upper(r.v_) * (1.0L + 0x1p-58L) * std::expm1(x.err_));
  r.add_rounding(t);
  return r;
}

BigReal sinh(const BigReal& x) {
  BigReal r(x.precision());
  int t = mpfr_sinh(r.v_, x.v_, MPFR_RNDN);
  if (x.err_ > 0) r.err_ = pad(x.err_ * std::cosh(abs_upper(x.v_) + x.err_));
  r.add_rounding(t);
  return r;
}

BigReal cosh(const BigReal& x) {
  BigReal r(x.precision());
  int t = mpfr_cosh(r.v_, x.v_, MPFR_RNDN);
  if (x.err_ > 0) r.err_ = pad(x.err_ * std::cosh(abs_upper(x.v_) + x.err_));
  r.add_rounding(t);
  return r;
}

BigReal sin(const BigReal& x) {
  BigReal r(x.precision());
  int t = mpfr_sin(r.v_, x.v_, MPFR_RNDN);
  r.err_ = x.err_;
  r.add_rounding(t);
  return r;
}

BigReal cos(const BigReal& x) {
  BigReal r(x.precision());
  int t = mpfr_cos(r.v_, x.v_, MPFR_RNDN);
  r.err_ = x.err_;
  r.add_rounding(t);
  return r;
}

BigReal abs(const BigReal& x) {
  BigReal r(x);
  mpfr_abs(r.v_, r.v_, MPFR_RNDN);
  return r;
}

// ---------------------------------------------------------------------------

BigComplex e_of(const RationalPhase& x, mpfr_prec_t precision) {
  const __int128 four_num = static_cast<__int128>(4) * x.num();
  const int quarter = static_cast<int>(four_num / x.den());
  const Int rem = static_cast<Int>(four_num - static_cast<__int128>(quarter) * x.den());
  BigReal c(1L, precision), s(0L, precision);
  if (rem != 0) {
    const mpfr_prec_t work = precision + 16;
    BigReal theta = BigReal(Rational(rem, x.den()), work) * BigReal::pi(work) / BigReal(2L, work);
    c = cos(theta).with_precision(precision);
    s = sin(theta).with_precision(precision);
  }
  switch (quarter) {
    case 0:
      return {c, s};
    case 1:
      return {-s, c};
    case 2:
      return {-c, -s};
    default:
      return {s, -c};
  }
}

BigComplex e_of(const BigReal& x) {
  const mpfr_prec_t p = x.precision();
  BigReal theta = BigReal(2L, p + 16) * BigReal::pi(p + 16) * x.with_precision(p + 16);
  return {cos(theta).with_precision(p), sin(theta).with_precision(p)};
}

namespace {

void require_positive(const BigReal& z, const char* who) {
  if (!(mpfr_sgn(z.raw()) > 0) || !(z.magnitude() > 2 * z.error()))
    throw std::domain_error(std::string(who) + ": argument must be positive");
}

// sqrt(2/(pi z)) at the working precision of z.
BigReal half_order_prefactor(const BigReal& z) {
  const mpfr_prec_t p = z.precision();
  return sqrt(BigReal(2L, p) / (BigReal::pi(p) * z));
}

// Sum_{k>=1} (+-1)^{k+1} z^{2k} 2k/(2k+1)!  (alternating when `alternate`).
// t_{k+1} = t_k z^2 / (2k (2k+3)), t_1 = z^2/3.
BigReal small_z_bracket(const BigReal& z, bool alternate) {
  const mpfr_prec_t p = z.precision();
  const BigReal z2 = z * z;
  BigReal term = z2 / BigReal(3L, p);
  BigReal sum = term;
  const long double first = term.magnitude();
  const long double target = first * std::ldexp(1.0L, -static_cast<int>(p) - 8);
  for (long k = 1;; ++k) {
    term = term * z2 / BigReal(2 * k * (2 * k + 3), p);
    const long double mag = term.magnitude();
    if (mag < target) {
      // Positive series: ratio <= z^2/10 < 1/2, so tail <= 2|t|.
      // Alternating series: tail <= |t|.
      sum.widen(alternate ? mag : 2 * mag);
      return sum;
    }
    if (alternate && (k % 2 == 1))
      sum -= term;
    else
      sum += term;
  }
}

mpfr_prec_t cancellation_guard(const BigReal& z) {
  const double v = z.to_double();
  if (v >= 1.0) return 16;
  return 16 + static_cast<mpfr_prec_t>(std::ceil(2.0 * std::log2(1.0 / v)));
}

}  // namespace

BigReal bessel_I_half(const BigReal& z) {
  require_positive(z, "bessel_I_half");
  const mpfr_prec_t p = z.precision();
  const BigReal w = z.with_precision(p + 16);
  return (half_order_prefactor(w) * sinh(w)).with_precision(p);
}

BigReal bessel_I_3half(const BigReal& z) {
  require_positive(z, "bessel_I_3half");
  const mpfr_prec_t p = z.precision();
  if (z.to_double() < 1e-2) {
    const BigReal w = z.with_precision(p + 16);
    return (half_order_prefactor(w) * small_z_bracket(w, false)).with_precision(p);
  }
  const BigReal w = z.with_precision(p + cancellation_guard(z));
  return (half_order_prefactor(w) * (cosh(w) - sinh(w) / w)).with_precision(p);
}

BigReal bessel_J_half(const BigReal& z) {
  require_positive(z, "bessel_J_half");
  const mpfr_prec_t p = z.precision();
  const BigReal w = z.with_precision(p + 16);
  return (half_order_prefactor(w) * sin(w)).with_precision(p);
}

BigReal bessel_J_3half(const BigReal& z) {
  require_positive(z, "bessel_J_3half");
  const mpfr_prec_t p = z.precision();
  if (z.to_double() < 1e-2) {
    const BigReal w = z.with_precision(p + 16);
    return (half_order_prefactor(w) * small_z_bracket(w, true)).with_precision(p);
  }
  const BigReal w = z.with_precision(p + cancellation_guard(z));
  return (half_order_prefactor(w) * (sin(w) / w - cos(w))).with_precision(p);
}

mpfr_prec_t auto_precision(Int n) {
  if (n < 0) throw std::invalid_argument("auto_precision: n must be non-negative");
  const double bits = std::numbers::pi * std::sqrt(2.0 * static_cast<double>(n) / 3.0) / std::log(2.0);
  return static_cast<mpfr_prec_t>(std::ceil(bits)) + 64;
}

}  // namespace kloost
