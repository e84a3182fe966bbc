#include "kloost/series.hpp"

#include <cmath>
#include <stdexcept>

#include "kloost/parallel.hpp"
#include "kloost/partitions.hpp"

namespace kloost {

const char* verdict_name(RoundingVerdict v) {
  switch (v) {
    case RoundingVerdict::Rounded:
      return "rounded";
    case RoundingVerdict::Indeterminate:
      return "indeterminate";
    case RoundingVerdict::Failed:
      return "failed";
  }
  return "?";
}

Int cutoff_for(double alpha, Int n) {
  if (!(alpha > 0) || n < 1) throw std::invalid_argument("cutoff_for: alpha and n must be positive");
  const double a = std::round(alpha);
  if (a == alpha && a < 1e6) {
    // ceil(sqrt(a^2 n)) in integers.
    const Int v = checked_mul(checked_mul(static_cast<Int>(a), static_cast<Int>(a)), n);
    Int r = static_cast<Int>(std::sqrt(static_cast<double>(v)));
    while (r * r < v) ++r;
    while (r > 0 && (r - 1) * (r - 1) >= v) --r;
    return std::max<Int>(r, 1);
  }
  return std::max<Int>(1, static_cast<Int>(std::ceil(alpha * std::sqrt(static_cast<double>(n)))));
}

namespace {

struct Formula {
  MultiplierSpec spec;
  Int m, n_index;   // S(m, n_index, c, spec)
  Int step;         // c runs over multiples of step
  bool three_half;  // I_{3/2} (p(n)) or I_{1/2}
  double prefactor_power;
};

Formula formula_for(int j, Int n) {
  switch (j) {
    case 1:
      return {MultiplierSpec::eta(), 1, 1 - n, 1, true, 0.75};
    case 2:
      return {MultiplierSpec::psi(), 0, n, 2, false, 0.25};
    case 3:
      return {MultiplierSpec::third_twist_eta_bar(), 0, n, 3, false, 0.25};
  }
  throw std::invalid_argument("series: j must be 1, 2 or 3");
}

// log2 of I_nu(z), good to a few bits; only steers precision.
double log2_bessel(bool three_half, double z) {
  if (z > 30) return (z - 0.5 * std::log(2 * M_PI * z)) / M_LN2;
  return std::log2(std::cyl_bessel_i(three_half ? 1.5 : 0.5, z));
}

void finish(SeriesResult& r) {
  r.rounded = r.value.round_nearest();
  r.rounding_gap = abs(r.value - BigReal(r.rounded, r.value.precision()));
  const long double im_mid = std::fabs(r.imag.to_long_double());
  if (im_mid > r.imag.error()) {
    r.verdict = RoundingVerdict::Failed;
    return;
  }
  const long double gap = r.rounding_gap.to_long_double() + r.rounding_gap.error();
  r.verdict = gap < 0.25L ? RoundingVerdict::Rounded : RoundingVerdict::Indeterminate;
}

}  // namespace

SeriesResult series_j(int j, Int n, Int cutoff, mpfr_prec_t precision_bits, const SeriesOptions& opt) {
  if (n < 1) throw std::invalid_argument("series: n must be positive");
  if (cutoff < 1) throw std::invalid_argument("series: cutoff must be positive");
  const Formula f = formula_for(j, n);
  const mpfr_prec_t p = precision_bits == 0 ? auto_precision(n) : precision_bits;
  if (p < 53) throw std::invalid_argument("series: precision must be at least 53 bits");

  std::vector<Int> cs;
  for (Int c = f.step; c <= cutoff; c += f.step) cs.push_back(c);
  const double logcount = std::ceil(std::log2(static_cast<double>(cs.size()) + 1));
  const mpfr_prec_t acc_bits = p + 8 + static_cast<mpfr_prec_t>(logcount);

  const Int D = checked_sub(checked_mul(24, n), 1);
  const double zd = M_PI * std::sqrt(static_cast<double>(D)) / 6.0;
  const double log2_pref = std::log2(2 * M_PI) - f.prefactor_power * std::log2(static_cast<double>(D));
  auto log2_term = [&](Int c) {
    // |S| <= phi(c) <= c, so |term| <= pref * I(z/c).
    return log2_pref + log2_bessel(f.three_half, zd / static_cast<double>(c));
  };
  const double top = cs.empty() ? 0 : log2_term(cs.front());

  auto compute = [&](std::size_t i) -> TermRecord {
    const Int c = cs[i];
    const double need = p - (top - log2_term(c)) + logcount + 8;
    const mpfr_prec_t bits =
        static_cast<mpfr_prec_t>(std::clamp(std::ceil(need), 53.0, static_cast<double>(p + 8)));
    ExpSum s = cached_generalized_S(opt.cache, f.m, f.n_index, c, f.spec).rotated(RationalPhase(-1, 8));
    EvaluatedSum k = evaluate(s, bits);
    const BigReal pi = BigReal::pi(bits);
    const BigReal z = pi * sqrt(BigReal(static_cast<long>(D), bits)) / BigReal(6 * c, bits);
    const BigReal bessel = f.three_half ? bessel_I_3half(z) : bessel_I_half(z);
    const BigReal sqrtD = sqrt(BigReal(static_cast<long>(D), bits));
    const BigReal root = f.three_half ? sqrt(sqrtD) * sqrtD : sqrt(sqrtD);  // D^{3/4} or D^{1/4}
    const BigReal scale = BigReal(2L, bits) * pi * bessel / (root * BigReal(static_cast<long>(c), bits));
    TermRecord t;
    t.c = c;
    t.bits = bits;
    t.term = k.value.re * scale;
    t.term_imag = k.value.im * scale;
    t.bessel = bessel;
    t.kloosterman = std::move(k.value);
    return t;
  };
  std::vector<TermRecord> terms = parallel_map(cs.size(), compute, opt.threads);

  SeriesResult r;
  r.n = n;
  r.cutoff_c = cutoff;
  r.precision = p;
  r.value = BigReal(0L, acc_bits);
  r.imag = BigReal(0L, acc_bits);
  for (const TermRecord& t : terms) {
    r.value += t.term.with_precision(acc_bits);
    r.imag += t.term_imag.with_precision(acc_bits);
  }
  if (opt.keep_terms) r.term_records = std::move(terms);
  finish(r);
  return r;
}

SeriesResult rademacher_p(Int n, Int cutoff, mpfr_prec_t precision_bits, const SeriesOptions& opt) {
  return series_j(1, n, cutoff, precision_bits, opt);
}

SeriesResult andrews_dragonette(Int n, Int cutoff, mpfr_prec_t precision_bits, const SeriesOptions& opt) {
  return series_j(2, n, cutoff, precision_bits, opt);
}

SeriesResult rank_mod3_exact(Int n, Int cutoff, mpfr_prec_t precision_bits, const SeriesOptions& opt) {
  return series_j(3, n, cutoff, precision_bits, opt);
}

BigInt series_oracle(int j, Int n) {
  switch (j) {
    case 1:
      return pentagonal_p(n);
    case 2:
      return rank_difference(2, n);
    case 3:
      return rank_difference(3, n);
  }
  throw std::invalid_argument("series_oracle: j must be 1, 2 or 3");
}

BigReal tail_R(int j, Int n, const BigReal& x, mpfr_prec_t precision_bits, const SeriesOptions& opt) {
  if (!(x.to_double() >= 1.0)) throw std::invalid_argument("tail_R: x must be at least 1");
  const BigInt oracle = series_oracle(j, n);
  mpz_class fl;
  mpfr_get_z(fl.get_mpz_t(), x.raw(), MPFR_RNDD);
  SeriesOptions o = opt;
  o.keep_terms = false;
  const SeriesResult s = series_j(j, n, fl.get_si(), precision_bits, o);
  return BigReal(oracle, s.value.precision()) - s.value;
}

BigReal rademacher_term_sinh_form(Int n, Int c, mpfr_prec_t precision_bits) {
  const mpfr_prec_t p = precision_bits + 16;
  const EvaluatedSum a = evaluate(classic_A(c, n), p);
  const BigReal pi = BigReal::pi(p);
  const BigReal lambda = sqrt(BigReal(Rational(24 * n - 1, 24), p));
  const BigReal k = pi / BigReal(static_cast<long>(c), p) * sqrt(BigReal(Rational(2, 3), p));
  const BigReal mu = k * lambda;
  // d/dn [sinh(mu)/lambda] = (k cosh(mu)/lambda - sinh(mu)/lambda^2) / (2 lambda).
  const BigReal deriv = (k * cosh(mu) / lambda - sinh(mu) / (lambda * lambda)) / (BigReal(2L, p) * lambda);
  const BigReal front = sqrt(BigReal(static_cast<long>(c), p)) / (pi * sqrt(BigReal(2L, p)));
  return (a.value.re * front * deriv).with_precision(precision_bits);
}

}  // namespace kloost
