#include "kloost/dedekind.hpp"

#include <numeric>

namespace kloost {

Rational sawtooth(const Rational& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  if (x.get_den() == 1) return 0;
  Rational r = x - Rational(fl) - Rational(1, 2);
  r.canonicalize();
  return r;
}

DedekindValue dedekind_def(Int d, Int c) {
  if (c < 1) throw std::invalid_argument("dedekind_def: c must be positive");
  Rational total = 0;
  for (Int r = 0; r < c; ++r) {
    Rational a(r, c);
    a.canonicalize();
    Rational b(mod(checked_mul(d % c, r), c), c);
    b.canonicalize();
    total += sawtooth(a) * sawtooth(b);
  }
  total.canonicalize();
  return {total};
}

namespace {

// A(d, c) = 12 c s(d, c) is an integer for gcd(d, c) = 1. Reciprocity
// s(d,c) + s(c,d) = (d^2 + c^2 + 1)/(12cd) - 1/4 becomes
//   d A(d, c) + c A(c, d) = d^2 + c^2 + 1 - 3cd,
// and A(c, d) = A(c mod d, d).
template <class Wide>
Int scaled_by_12c(Int d, Int c) {
  struct Level {
    Int d, c;
  };
  Level stack[128];
  int depth = 0;
  Int x = mod(d, c), y = c;
  while (y > 1) {
    stack[depth++] = {x, y};
    Int r = y % x;
    y = x;
    x = r;
  }
  Wide a = 0;  // A(0, 1) = 0
  while (depth > 0) {
    const Level& l = stack[--depth];
    const Wide dd = l.d, cc = l.c;
    const Wide num = dd * dd + cc * cc + 1 - 3 * cc * dd - cc * a;
    if (num % dd != 0) throw std::logic_error("dedekind: reciprocity lost integrality");
    a = num / dd;
  }
  return static_cast<Int>(a);
}

Int scaled_dedekind(Int d, Int c) {
  if (c < 1) throw std::invalid_argument("dedekind_fast: c must be positive");
  if (std::gcd(d, c) != 1) throw std::invalid_argument("dedekind_fast: gcd(d, c) must be 1");
  // |A| <= c^2 and the numerator stays below ~c^3: int64 is exact for c < 2^20.
  if (c < (Int{1} << 20)) return scaled_by_12c<Int>(d, c);
  if (c > (Int{1} << 40)) throw OverflowError("dedekind_fast: modulus too large");
  return scaled_by_12c<__int128>(d, c);
}

}  // namespace

DedekindValue dedekind_fast(Int d, Int c) {
  Rational r(scaled_dedekind(d, c), checked_mul(12, c));
  r.canonicalize();
  return {r};
}

Int dedekind_times_6c(Int d, Int c) {
  const Int a = scaled_dedekind(d, c);
  if (a % 2 != 0) throw std::logic_error("dedekind: 6c*s(d,c) not integral");
  return a / 2;
}

}  // namespace kloost
