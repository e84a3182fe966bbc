// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "kloost/bounds.hpp"
#include "kloost/dedekind.hpp"
#include "kloost/kloosterman.hpp"
#include "kloost/multiplier.hpp"
#include "kloost/parallel.hpp"
#include "kloost/partitions.hpp"
#include "kloost/series.hpp"
#include "kloost/specfun.hpp"
#include "oracles.hpp"

using namespace kloost;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

const unsigned kThreads = default_threads();

// Rounds series j for n in [1, max_n] at ceil(alpha sqrt n) against `want`.
Outcome series_criterion(int j, Int max_n, double alpha, const std::function<BigInt(Int)>& want) {
  const auto results = parallel_map(
      static_cast<std::size_t>(max_n),
      [&](std::size_t i) {
        const Int n = static_cast<Int>(i) + 1;
        SeriesOptions opt;
        opt.keep_terms = false;
        return series_j(j, n, cutoff_for(alpha, n), 0, opt);
      },
      kThreads);
  std::ostringstream bad;
  int failures = 0;
  double worst_gap = 0;
  Int worst_n = 0;
  for (const SeriesResult& r : results) {
    const double gap = r.rounding_gap.to_double();
    if (gap > worst_gap) {
      worst_gap = gap;
      worst_n = r.n;
    }
    const bool ok = r.verdict == RoundingVerdict::Rounded && gap < 0.25 && r.rounded == want(r.n);
    if (!ok) {
      ++failures;
      if (failures <= 5)
        bad << " n=" << r.n << " (value " << r.value.to_string(12) << ", want " << want(r.n).get_str() << ", gap "
            << gap << ", " << verdict_name(r.verdict) << ")";
    }
  }
  std::ostringstream d;
  d << max_n << " values, " << failures << " failures, max gap " << worst_gap << " at n=" << worst_n;
  if (failures) d << ";" << bad.str();
  return {failures == 0, d.str()};
}

Outcome c1() {
  return series_criterion(1, 500, 5, pentagonal_p);
}

Outcome c2() {
  const RankTable t = build_rank_table(200);
  return series_criterion(2, 200, 10, [&](Int n) -> BigInt { return N_abn(0, 2, n, t) - N_abn(1, 2, n, t); });
}

Outcome c3() {
  const RankTable t = build_rank_table(200);
  return series_criterion(3, 200, 10, [&](Int n) -> BigInt { return N_abn(0, 3, n, t) - N_abn(1, 3, n, t); });
}

Outcome c4() {
  SeriesOptions opt;
  opt.threads = kThreads;
  const TailDecayReport r1 = tail_decay_experiment(1, 100, 2000, 5, 1, opt);
  const TailDecayReport r2 = tail_decay_experiment(2, 100, 1000, 10, 1, opt);
  const TailDecayReport r3 = tail_decay_experiment(3, 100, 1000, 10, 1, opt);
  const bool pass = r1.fit.exponent <= -0.5 + 0.1 && r2.fit.exponent <= 0.1 && r3.fit.exponent <= 0.1;
  char buf[256];
  std::snprintf(buf, sizeof buf, "slopes R_1 %.4f (<= -0.4), R_2 %.4f (<= 0.1), R_3 %.4f (<= 0.1)", r1.fit.exponent,
                r2.fit.exponent, r3.fit.exponent);
  return {pass, buf};
}

Outcome c5() {
  std::size_t checked = 0, mismatches = 0;
  for (Int c = 1; c <= 60; ++c) {
    for (Int d = -60; d <= 60; ++d) {
      if (gcd(c, d) != 1) continue;
      const Int a0 = mod_inverse(mod(d, c), c);
      for (Int a = a0 - ((a0 + 60) / c) * c; a <= 60; a += c) {
        if (a < -60) continue;
        const GammaMatrix g = GammaMatrix::make(a, (a * d - 1) / c, c, d);
        mismatches += !(eval_eta_knopp(g) == eval_eta_rademacher(g));
        ++checked;
      }
    }
  }
  return {mismatches == 0, std::to_string(checked) + " matrices, " + std::to_string(mismatches) + " mismatches"};
}

Outcome c6() {
  std::size_t checked = 0, mismatches = 0;
  for (Int c = 1; c <= 200; ++c)
    for (Int n = 1; n <= 50; ++n, ++checked)
      mismatches +=
          !(generalized_S(1, 1 - n, c, MultiplierSpec::eta()).rotated(RationalPhase(-1, 8)) == classic_A(c, n));
  const std::size_t a_checked = checked;

  std::vector<MultiplierSpec> specs = oracle::cocycle_specs();
  specs.push_back(MultiplierSpec::parse("theta:12:48"));
  for (const auto& spec : specs) {
    const MultiplierSpec bar = spec.conj();
    for (Int c = spec.level(); c <= 100; c += spec.level())
      for (Int m = -5; m <= 5; ++m)
        for (Int n = -5; n <= 5; ++n, ++checked) {
          const ExpSum rhs = spec.alpha() > 0 ? generalized_S(1 - m, 1 - n, c, bar) : generalized_S(-m, -n, c, bar);
          mismatches += !(generalized_S(m, n, c, spec).conj() == rhs);
        }
  }
  const std::size_t conj_checked = checked - a_checked;

  for (Int c = 1; c <= 100; ++c) {
    const bool negate = ((c + 1) / 2) % 2 == 1;
    const Int shift = c % 2 == 0 ? c / 2 : 0;
    for (Int n = -20; n <= 50; ++n, ++checked) {
      ExpSum lhs = classic_A(2 * c, n - shift);
      if (negate) lhs = lhs.rotated(RationalPhase(1, 2));
      mismatches += !(lhs == generalized_S(0, n, 2 * c, MultiplierSpec::psi()).conj().rotated(RationalPhase(1, 8)));
    }
  }
  std::ostringstream d;
  d << a_checked << " A_c identities, " << conj_checked << " conjugations, " << checked - a_checked - conj_checked
    << " psi identities; " << mismatches << " mismatches";
  return {mismatches == 0, d.str()};
}

Outcome c7() {
  std::mt19937_64 rng(0xC0C7C1E);
  std::size_t mismatches = 0, off_sign = 0, total = 0;
  const auto specs = oracle::cocycle_specs();
  for (const auto& spec : specs) {
    for (int i = 0; i < 500; ++i, ++total) {
      const GammaMatrix g1 = oracle::random_gamma0(rng, spec.level());
      const GammaMatrix g2 = oracle::random_gamma0(rng, spec.level());
      const RationalPhase w = cocycle_w(g1, g2, spec.weight());
      off_sign += !(w.is_zero() || w == RationalPhase(1, 2));
      mismatches += !(eval_multiplier(spec, g1 * g2) == w + eval_multiplier(spec, g1) + eval_multiplier(spec, g2));
    }
  }
  std::ostringstream d;
  d << specs.size() << " multipliers x 500 pairs, " << mismatches << " mismatches, " << off_sign << " w outside {+-1}";
  return {mismatches == 0 && off_sign == 0, d.str()};
}

Outcome c8() {
  const BoundReport s = weil_check_standard({1, 5}, {1, 5}, 300);
  const BoundReport t = weil_check_theta_type(MultiplierSpec::theta(), {1, 5}, {1, 5}, 300);
  std::ostringstream d;
  d << "standard: " << s.checked << " sums, " << s.violations.size() << " violations, max ratio " << s.fitted_constant
    << "; theta: " << t.checked << " sums, " << t.violations.size() << " violations, max ratio " << t.fitted_constant;
  return {s.violations.empty() && t.violations.empty(), d.str()};
}

Outcome c9() {
  std::size_t checked = 0, mismatches = 0, non_integral = 0;
  for (Int c = 2; c <= 300; ++c)
    for (Int d = 1; d < c; ++d) {
      if (gcd(d, c) != 1) continue;
      ++checked;
      const Rational def = dedekind_def(d, c).value;
      mismatches += !(dedekind_fast(d, c).value == def);
      const Rational scaled = 12 * c * def;
      non_integral += scaled.get_den() != 1;
    }
  std::ostringstream d;
  d << checked << " pairs, " << mismatches << " mismatches, " << non_integral << " non-integral 12c s(d,c)";
  return {mismatches == 0 && non_integral == 0, d.str()};
}

Outcome c10() {
  std::size_t bad_rows = 0, bad_brute = 0, bad_relation = 0;
  const RankTable t = build_rank_table(500);
  for (Int n = 0; n <= 500; ++n) {
    BigInt s = 0;
    for (const BigInt& x : t.row(n)) s += x;
    bad_rows += s != pentagonal_p(n);
  }
  const auto brute = oracle::brute_rank_counts(40);
  for (Int n = 0; n <= 40; ++n)
    for (Int m = -n; m <= n; ++m) bad_brute += t.count(m, n) != brute[n][m + n];
  for (Int b : {2, 3}) {
    std::vector<std::vector<CyclotomicInt>> A(b);
    for (Int j = 1; j < b; ++j) A[j] = rank_series_at_root(j, b, 200);
    for (Int a = 0; a < b; ++a)
      for (Int n = 1; n <= 200; ++n) {
        CyclotomicInt rhs(b, pentagonal_p(n));
        for (Int j = 1; j < b; ++j) rhs += CyclotomicInt::zeta_power(b, -a * j) * A[j][n];
        bad_relation += !(rhs == CyclotomicInt(b, N_abn(a, b, n, t) * b));
      }
  }
  std::ostringstream d;
  d << bad_rows << " bad row sums (n<=500), " << bad_brute << " enumeration mismatches (n<=40), " << bad_relation
    << " failures of the residue-class relation (b=2,3, n<=200)";
  return {bad_rows == 0 && bad_brute == 0 && bad_relation == 0, d.str()};
}

Outcome c11() {
  const auto grid = log_grid(100, 10000, 25);
  bool pass = true;
  std::ostringstream d;
  for (Int n0 : {5, 50}) {
    const CancellationReport r = cancellation_experiment(1, 1 - n0, MultiplierSpec::eta(), grid);
    pass = pass && r.below_half;
    d << "n0=" << n0 << " exponent " << r.fit.exponent << " (residual " << r.fit.residual << "); ";
  }
  const CancellationReport control = cancellation_control(grid);
  d << "no-cancellation control exponent " << control.fit.exponent;
  return {pass, d.str()};
}

Outcome c12() {
  // Tolerance 2^-120 relative to max(1, |value|): an absolute 2^-120 is below
  // one ulp of a 128-bit value once |I(z)| > 2^7, as at z = 20.
  const mpfr_prec_t p = 128;
  const Rational zs[] = {Rational(1, 1000), Rational(1, 10), Rational(1), Rational(5), Rational(20)};
  struct Fn {
    const char* name;
    BigReal (*f)(const BigReal&);
    double nu;
    int sign;
  };
  const Fn fns[] = {{"I_1/2", bessel_I_half, 0.5, 1},
                    {"I_3/2", bessel_I_3half, 1.5, 1},
                    {"J_1/2", bessel_J_half, 0.5, -1},
                    {"J_3/2", bessel_J_3half, 1.5, -1}};
  int failures = 0;
  double worst = -1e9;
  std::ostringstream bad;
  for (const Rational& zq : zs)
    for (const Fn& fn : fns) {
      const BigReal z(zq, p);
      const BigReal got = fn.f(z);
      mpfr_t want, diff;
      mpfr_init2(want, 4 * p);
      mpfr_init2(diff, 4 * p);
      oracle::ascending_bessel(want, z.raw(), fn.nu, fn.sign, 4 * p);
      mpfr_sub(diff, got.raw(), want, MPFR_RNDN);
      const double scale = std::max(1.0, std::fabs(mpfr_get_d(want, MPFR_RNDN)));
      const double rel = mpfr_zero_p(diff) ? -1e9 : std::log2(std::fabs(mpfr_get_d(diff, MPFR_RNDN)) / scale);
      worst = std::max(worst, rel);
      if (rel > -120) {
        ++failures;
        bad << " " << fn.name << "(" << zq.get_str() << ") err 2^" << rel;
      }
      mpfr_clear(want);
      mpfr_clear(diff);
    }
  std::ostringstream d;
  d << "20 evaluations, worst scaled error 2^" << worst << " (limit 2^-120)";
  if (failures) d << ";" << bad.str();
  return {failures == 0, d.str()};
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"partition reproduction, n <= 500", c1},
      {"A(1/2; n) exact formula, n <= 200", c2},
      {"A(1/3; n) exact formula, n <= 200", c3},
      {"tail decay slopes", c4},
      {"eta multiplier: Rademacher = Knopp", c5},
      {"exact identity suite", c6},
      {"cocycle law", c7},
      {"Weil hard bounds", c8},
      {"Dedekind fast = definition", c9},
      {"oracle self-consistency", c10},
      {"partial-sum cancellation", c11},
      {"Bessel closed forms vs series", c12},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d %s: %s [%.1fs] %s\n", index, o.pass ? "PASS" : "FAIL", name, secs, o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
