#include "kloost/exact_arith.hpp"

#include <cstdlib>
#include <numeric>
#include <ostream>
#include <utility>

namespace kloost {

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("int64 overflow in add");
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("int64 overflow in sub");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("int64 overflow in mul");
  return r;
}

Int gcd(Int a, Int b) { return std::gcd(a, b); }

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int mod(Int a, Int b) {
  Int r = a % b;
  return r < 0 ? r + b : r;
}

// ---------------------------------------------------------------------------
// RationalPhase

namespace {

void reduce_mod_one(__int128 p, __int128 q, Int& num, Int& den) {
  if (q == 0) throw std::invalid_argument("RationalPhase: zero denominator");
  constexpr __int128 kSmall = INT64_MAX;
  if (q > 0 && q <= kSmall && p >= -kSmall && p <= kSmall) {
    const Int qq = static_cast<Int>(q);
    Int pp = static_cast<Int>(p) % qq;
    if (pp < 0) pp += qq;
    if (pp == 0) {
      num = 0;
      den = 1;
      return;
    }
    const Int g = std::gcd(pp, qq);
    num = pp / g;
    den = qq / g;
    return;
  }
  if (q < 0) {
    p = -p;
    q = -q;
  }
  p %= q;
  if (p < 0) p += q;
  __int128 a = p, b = q;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a == 0) a = q;  // p == 0
  p /= a;
  q /= a;
  if (q > INT64_MAX) throw OverflowError("RationalPhase: denominator exceeds int64");
  num = static_cast<Int>(p);
  den = static_cast<Int>(q);
  if (num == 0) den = 1;
}

}  // namespace

RationalPhase::RationalPhase(Int p, Int q) { reduce_mod_one(p, q, num_, den_); }

RationalPhase::RationalPhase(const Rational& r) {
  mpz_class den = r.get_den();
  mpz_class num = r.get_num();
  mpz_fdiv_r(num.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (!den.fits_slong_p() || !num.fits_slong_p())
    throw OverflowError("RationalPhase: rational does not fit int64");
  reduce_mod_one(num.get_si(), den.get_si(), num_, den_);
}

RationalPhase RationalPhase::sign(int s) {
  if (s == 1) return {};
  if (s == -1) return {1, 2};
  throw std::invalid_argument("RationalPhase::sign: expected +-1");
}

RationalPhase RationalPhase::operator-() const {
  RationalPhase r;
  if (num_ != 0) {
    r.num_ = den_ - num_;
    r.den_ = den_;
  }
  return r;
}

RationalPhase& RationalPhase::operator+=(const RationalPhase& o) {
  if (o.num_ == 0) return *this;
  if (num_ == 0) return *this = o;
  Int g = std::gcd(den_, o.den_);
  __int128 q = static_cast<__int128>(den_ / g) * o.den_;
  __int128 p = static_cast<__int128>(num_) * (o.den_ / g) + static_cast<__int128>(o.num_) * (den_ / g);
  reduce_mod_one(p, q, num_, den_);
  return *this;
}

RationalPhase operator*(Int k, const RationalPhase& p) {
  Int km = mod(k, p.den_);
  RationalPhase r;
  reduce_mod_one(static_cast<__int128>(km) * p.num_, p.den_, r.num_, r.den_);
  return r;
}

std::strong_ordering operator<=>(const RationalPhase& a, const RationalPhase& b) {
  __int128 l = static_cast<__int128>(a.num_) * b.den_;
  __int128 r = static_cast<__int128>(b.num_) * a.den_;
  if (l != r) return l < r ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string RationalPhase::str() const {
  if (num_ == 0) return "0";
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const RationalPhase& p) { return os << p.str(); }

// ---------------------------------------------------------------------------
// Kronecker symbol

namespace {

// (a/2) indexed by a mod 8.
constexpr int kTwoTable[8] = {0, 1, 0, -1, 0, -1, 0, 1};

}  // namespace

int kronecker(Int a, Int n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if ((a % 2 == 0) && (n % 2 == 0)) return 0;

  int k = 1;
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v % 2 == 1) k = kTwoTable[mod(a, 8)];
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }

  // Jacobi symbol (a/n), n odd positive.
  Int b = n;
  Int x = mod(a, b);
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      Int r = b % 8;
      if (r == 3 || r == 5) k = -k;
    }
    std::swap(x, b);
    if (x % 4 == 3 && b % 4 == 3) k = -k;
    x %= b;
  }
  return b == 1 ? k : 0;
}

RationalPhase epsilon_d(Int d) {
  if (d % 2 == 0) throw std::invalid_argument("epsilon_d: d must be odd");
  return mod(d, 4) == 1 ? RationalPhase{} : RationalPhase{1, 4};
}

// ---------------------------------------------------------------------------
// Divisors and factorization

Rational sigma_k(Int k, Int ell) {
  if (ell < 1) throw std::invalid_argument("sigma_k: ell must be positive");
  Rational total = 0;
  auto power = [k](Int d) {
    mpz_class base = d;
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(std::llabs(k)));
    return k >= 0 ? Rational(p) : Rational(mpz_class(1), p);
  };
  for (Int d = 1; d * d <= ell; ++d) {
    if (ell % d != 0) continue;
    total += power(d);
    if (d != ell / d) total += power(ell / d);
  }
  total.canonicalize();
  return total;
}

Int sigma0(Int ell) {
  if (ell < 1) throw std::invalid_argument("sigma0: ell must be positive");
  Int count = 0;
  for (Int d = 1; d * d <= ell; ++d) {
    if (ell % d != 0) continue;
    count += (d * d == ell) ? 1 : 2;
  }
  return count;
}

SquareDecomposition square_decompose(Int x, Int M) {
  if (x < 1 || M < 1) throw std::invalid_argument("square_decompose: inputs must be positive");
  SquareDecomposition s;
  auto absorb = [&](Int p, int e) {
    Int half = 1;
    for (int i = 0; i < e / 2; ++i) half *= p;
    if (M % p == 0)
      s.u *= half;
    else
      s.w *= half;
    if (e % 2 == 1) s.t *= p;
  };
  Int rest = x;
  for (Int p = 2; p * p <= rest; ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e > 0) absorb(p, e);
  }
  if (rest > 1) absorb(rest, 1);
  return s;
}

Int mod_inverse(Int d, Int c) {
  if (c < 1) throw std::invalid_argument("mod_inverse: modulus must be positive");
  if (c == 1) return 0;
  Int r0 = c, r1 = mod(d, c);
  Int s0 = 0, s1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
  return mod(s0, c);
}

Int euler_phi(Int n) {
  if (n < 1) throw std::invalid_argument("euler_phi: n must be positive");
  Int result = n;
  Int rest = n;
  for (Int p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    result -= result / p;
  }
  if (rest > 1) result -= result / rest;
  return result;
}

}  // namespace kloost
