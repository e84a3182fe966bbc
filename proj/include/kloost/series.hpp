#pragma once

// Truncated Rademacher-type series for p(n), A(1/2; n) and A(1/3; n).

#include <optional>
#include <vector>

#include "kloost/cache.hpp"
#include "kloost/kloosterman.hpp"
#include "kloost/specfun.hpp"

namespace kloost {

enum class RoundingVerdict {
  Rounded,        // |value - rounded| + numeric error < 1/4
  Indeterminate,  // numeric error too large to decide
  Failed,         // imaginary part provably non-zero
};

const char* verdict_name(RoundingVerdict v);

struct TermRecord {
  Int c = 0;
  BigComplex kloosterman{BigReal(0L, 53), BigReal(0L, 53)};
  BigReal bessel{0L, 53};
  BigReal term{0L, 53};  // real part of the c-th summand, prefactor included
  BigReal term_imag{0L, 53};
  mpfr_prec_t bits = 0;
};

struct SeriesResult {
  Int n = 0;
  Int cutoff_c = 0;
  mpfr_prec_t precision = 0;
  BigReal value{0L, 53};
  BigReal imag{0L, 53};
  std::vector<TermRecord> term_records;
  BigInt rounded;
  BigReal rounding_gap{0L, 53};
  RoundingVerdict verdict = RoundingVerdict::Indeterminate;
};

struct SeriesOptions {
  unsigned threads = 1;
  SumCache* cache = nullptr;
  bool keep_terms = true;
};

/// ceil(alpha sqrt(n)), exact for integral alpha.
Int cutoff_for(double alpha, Int n);

/// p(n) ~ 2 pi (24n-1)^{-3/4} sum_{c <= cutoff} A_c(n)/c I_{3/2}(pi sqrt(24n-1)/(6c))
/// with A_c(n) = e(-1/8) S(1, 1-n, c, nu_eta). precision_bits = 0 selects auto.
SeriesResult rademacher_p(Int n, Int cutoff, mpfr_prec_t precision_bits, const SeriesOptions& opt = {});
/// A(1/2; n) via psi on Gamma_0(2), 2 | c.
SeriesResult andrews_dragonette(Int n, Int cutoff, mpfr_prec_t precision_bits, const SeriesOptions& opt = {});
/// A(1/3; n) via (d/3) conj(nu_eta) on Gamma_0(3), 3 | c.
SeriesResult rank_mod3_exact(Int n, Int cutoff, mpfr_prec_t precision_bits, const SeriesOptions& opt = {});

/// Series for j = 1 (p), 2 (A(1/2)), 3 (A(1/3)).
SeriesResult series_j(int j, Int n, Int cutoff, mpfr_prec_t precision_bits, const SeriesOptions& opt = {});

/// R_j(n, x) = oracle value - partial sum over c <= floor(x).
BigReal tail_R(int j, Int n, const BigReal& x, mpfr_prec_t precision_bits, const SeriesOptions& opt = {});
/// The exact value the j-th series converges to.
BigInt series_oracle(int j, Int n);

/// The c-th summand of p(n) written as the derivative of sinh:
/// A_c(n) sqrt(c) / (pi sqrt 2) d/dn [ sinh(pi/c sqrt(2/3 (n - 1/24))) / sqrt(n - 1/24) ].
BigReal rademacher_term_sinh_form(Int n, Int c, mpfr_prec_t precision_bits);

}  // namespace kloost
