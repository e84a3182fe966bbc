#pragma once

// Independent reference implementations shared by the unit tests and the
// acceptance runner. Nothing here calls the library code it checks.

#include <mpfr.h>

#include <random>
#include <vector>

#include "kloost/multiplier.hpp"

namespace oracle {

using kloost::Int;

// counts[n][m + n] = number of partitions of n with rank m, by enumeration.
inline std::vector<std::vector<Int>> brute_rank_counts(Int max_n) {
  std::vector<std::vector<Int>> counts(max_n + 1);
  for (Int n = 0; n <= max_n; ++n) counts[n].assign(2 * n + 1, 0);
  std::vector<Int> parts;
  auto rec = [&](auto&& self, Int left, Int cap, Int total) -> void {
    if (left == 0) {
      const Int rank = parts.empty() ? 0 : parts.front() - static_cast<Int>(parts.size());
      ++counts[total][rank + total];
      return;
    }
    for (Int k = std::min(left, cap); k >= 1; --k) {
      parts.push_back(k);
      self(self, left - k, k, total);
      parts.pop_back();
    }
  };
  for (Int n = 0; n <= max_n; ++n) rec(rec, n, n, n);
  return counts;
}

// sum_k s^k (z/2)^{2k+nu} / (k! Gamma(k+nu+1)) at `work` bits (s = +1 for I,
// -1 for J). At least 30 terms; continues until a term drops 2^work below the sum.
inline void ascending_bessel(mpfr_t out, mpfr_srcptr z, double nu, int s, mpfr_prec_t work) {
  mpfr_t half, term, x2, g, tmp;
  for (mpfr_ptr v : {half, term, x2, g, tmp}) mpfr_init2(v, work);
  mpfr_div_2ui(half, z, 1, MPFR_RNDN);
  mpfr_sqr(x2, half, MPFR_RNDN);
  mpfr_set_d(tmp, nu, MPFR_RNDN);
  mpfr_pow(term, half, tmp, MPFR_RNDN);
  mpfr_set_d(g, nu + 1, MPFR_RNDN);
  mpfr_gamma(g, g, MPFR_RNDN);
  mpfr_div(term, term, g, MPFR_RNDN);
  mpfr_set(out, term, MPFR_RNDN);
  for (long k = 1;; ++k) {
    mpfr_mul(term, term, x2, MPFR_RNDN);
    mpfr_div_si(term, term, k, MPFR_RNDN);
    mpfr_set_d(tmp, k + nu, MPFR_RNDN);
    mpfr_div(term, term, tmp, MPFR_RNDN);
    if (s < 0) mpfr_neg(term, term, MPFR_RNDN);
    mpfr_add(out, out, term, MPFR_RNDN);
    if (k >= 30 && mpfr_get_exp(term) < mpfr_get_exp(out) - static_cast<mpfr_exp_t>(work)) break;
  }
  for (mpfr_ptr v : {half, term, x2, g, tmp}) mpfr_clear(v);
}

inline std::vector<kloost::MultiplierSpec> cocycle_specs() {
  using kloost::MultiplierSpec;
  return {MultiplierSpec::eta(),
          MultiplierSpec::eta_bar(),
          MultiplierSpec::theta(),
          MultiplierSpec::theta_bar(),
          MultiplierSpec::psi(),
          MultiplierSpec::psi_bar(),
          MultiplierSpec::third_twist_eta_bar(),
          MultiplierSpec::third_twist_eta_bar().conj(),
          MultiplierSpec::parse("theta:12:576"),
          MultiplierSpec::parse("eta:-3:3"),
          MultiplierSpec::parse("etabar:-3:3")};
}

// Random element of Gamma_0(N) with |c| <= 40 N, including c = 0.
inline kloost::GammaMatrix random_gamma0(std::mt19937_64& rng, Int N) {
  using kloost::gcd;
  std::uniform_int_distribution<Int> kc(-40, 40), dd(-200, 200), shift(-3, 3);
  for (;;) {
    const Int c = N * kc(rng);
    const Int d = dd(rng);
    if (d == 0 || gcd(c, d) != 1) continue;
    if (c == 0) {
      if (d != 1 && d != -1) continue;
      return {d, shift(rng) * 5, 0, d};
    }
    const Int cc = c < 0 ? -c : c;
    const Int a = kloost::mod_inverse(kloost::mod(d, cc), cc) + shift(rng) * cc;
    const Int b = (a * d - 1) / c;
    if (a * d - b * c != 1) continue;
    return {a, b, c, d};
  }
}

}  // namespace oracle
