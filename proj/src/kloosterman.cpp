#include "kloost/kloosterman.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "kloost/dedekind.hpp"

namespace kloost {

TildeIndex::TildeIndex(Int n_, const Rational& alpha_) : n(n_), alpha(alpha_) {
  if (alpha < 0 || alpha >= 1) throw std::invalid_argument("TildeIndex: alpha must lie in [0, 1)");
  tilde = Rational(n) - alpha;
  tilde.canonicalize();
}

// ---------------------------------------------------------------------------
// ExpSum

namespace {

std::vector<ExpSum::Term> merge_terms(std::vector<ExpSum::Term> terms) {
  auto less = [](const auto& x, const auto& y) { return x.phase < y.phase; };
  if (!std::is_sorted(terms.begin(), terms.end(), less)) std::sort(terms.begin(), terms.end(), less);
  std::vector<ExpSum::Term> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    if (!out.empty() && out.back().phase == t.phase)
      out.back().weight = checked_add(out.back().weight, t.weight);
    else
      out.push_back(t);
  }
  std::erase_if(out, [](const auto& t) { return t.weight == 0; });
  return out;
}

}  // namespace

ExpSum::ExpSum(std::vector<Term> terms, SumKey key) : key_(std::move(key)) {
  for (const auto& t : terms) summands_ = checked_add(summands_, t.weight < 0 ? -t.weight : t.weight);
  terms_ = merge_terms(std::move(terms));
}

ExpSum::ExpSum(std::vector<Term> terms, SumKey key, Int summands)
    : terms_(merge_terms(std::move(terms))), key_(std::move(key)), summands_(summands) {}

Int ExpSum::total_weight() const {
  Int w = 0;
  for (const auto& t : terms_) w = checked_add(w, t.weight < 0 ? -t.weight : t.weight);
  return w;
}

ExpSum ExpSum::conj() const {
  std::vector<Term> t;
  t.reserve(terms_.size());
  for (const auto& x : terms_) t.push_back({-x.phase, x.weight});
  return ExpSum(std::move(t), key_, summands_);
}

ExpSum ExpSum::rotated(const RationalPhase& shift) const {
  std::vector<Term> t;
  t.reserve(terms_.size());
  for (const auto& x : terms_) t.push_back({x.phase + shift, x.weight});
  return ExpSum(std::move(t), key_, summands_);
}

// ---------------------------------------------------------------------------
// Construction

std::vector<GammaMatrix> enumerate_gamma(Int c, Int N) {
  if (c < 1 || N < 1) throw std::invalid_argument("enumerate_gamma: c and N must be positive");
  if (c % N != 0) throw std::invalid_argument("enumerate_gamma: N must divide c");
  std::vector<GammaMatrix> out;
  for (Int d = 0; d < c; ++d) {
    if (gcd(d, c) != 1) continue;
    const Int a = mod_inverse(d, c);
    const __int128 ad = static_cast<__int128>(a) * d;
    out.push_back({a, static_cast<Int>((ad - 1) / c), c, d});
  }
  return out;
}

ExpSum generalized_S(Int m, Int n, Int c, const MultiplierSpec& spec) {
  if (c < 1) throw std::invalid_argument("generalized_S: c must be positive");
  if (c % spec.level() != 0) throw std::invalid_argument("generalized_S: level must divide c");
  // alpha = p/q; (m~ a + n~ d)/c = ((mq - p) a + (nq - p) d) / (q c).
  const Rational& alpha = spec.alpha();
  const Int p = alpha.get_num().get_si();
  const Int q = alpha.get_den().get_si();
  // Every multiplier value has denominator dividing 24c, so all phases live
  // in (1/L)Z/Z with L = lcm(24c, qc).
  const Int qc = checked_mul(q, c);
  const Int L = std::lcm(checked_mul(24, c), qc);
  const __int128 mt = (static_cast<__int128>(m) * q - p) % qc;
  const __int128 nt = (static_cast<__int128>(n) * q - p) % qc;
  const Int scale = L / qc;

  std::vector<Int> nums;
  const std::vector<GammaMatrix> gammas = enumerate_gamma(c, spec.level());
  nums.reserve(gammas.size());
  for (const GammaMatrix& g : gammas) {
    __int128 x = (mt * g.a + nt * g.d) % qc;
    const RationalPhase nu = eval_multiplier(spec, g);
    if (L % nu.den() != 0) throw std::logic_error("generalized_S: multiplier denominator does not divide 24c");
    x = x * scale - static_cast<__int128>(nu.num()) * (L / nu.den());
    x %= L;
    if (x < 0) x += L;
    nums.push_back(static_cast<Int>(x));
  }
  std::sort(nums.begin(), nums.end());
  std::vector<ExpSum::Term> terms;
  for (std::size_t i = 0; i < nums.size();) {
    std::size_t j = i;
    while (j < nums.size() && nums[j] == nums[i]) ++j;
    terms.push_back({RationalPhase(nums[i], L), static_cast<Int>(j - i)});
    i = j;
  }
  return ExpSum(std::move(terms), {spec.id(), m, n, c}, static_cast<Int>(gammas.size()));
}

ExpSum standard_S(Int m, Int n, Int c) {
  if (c < 1) throw std::invalid_argument("standard_S: c must be positive");
  std::vector<ExpSum::Term> terms;
  const __int128 mm = mod(m, c), nn = mod(n, c);
  for (Int d = 0; d < c; ++d) {
    if (gcd(d, c) != 1) continue;
    const __int128 x = (mm * mod_inverse(d, c) + nn * d) % c;
    terms.push_back({RationalPhase(static_cast<Int>(x), c), 1});
  }
  return ExpSum(std::move(terms), {"standard", m, n, c});
}

ExpSum classic_A(Int c, Int n) {
  if (c < 1) throw std::invalid_argument("classic_A: c must be positive");
  // e^{pi i s(d,c)} e(-dn/c) = e((k - 12 d n) / (12 c)) with k = 6c s(d,c).
  const Int den = checked_mul(12, c);
  const __int128 nn = mod(n, c);
  std::vector<ExpSum::Term> terms;
  for (Int d = 0; d < c; ++d) {
    if (gcd(d, c) != 1) continue;
    const Int k = dedekind_times_6c(d, c);
    const __int128 x = (static_cast<__int128>(k) - 12 * ((nn * d) % c)) % den;
    terms.push_back({RationalPhase(static_cast<Int>(x), den), 1});
  }
  return ExpSum(std::move(terms), {"A", 0, n, c});
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

// A phase x in (0, 1/2) with the weights at x and at 1 - x.
struct Pair {
  RationalPhase x;
  Int w_plus = 0;
  Int w_minus = 0;
};

struct Plan {
  std::vector<Pair> pairs;
  // Exact part: w0 e(0) + w14 e(1/4) + w12 e(1/2) + w34 e(3/4).
  Int re_exact = 0;
  Int im_exact = 0;
};

Plan make_plan(const ExpSum& s) {
  Plan plan;
  std::vector<Pair> low, high;  // both ascending in x
  const auto& t = s.terms();
  for (const auto& term : t) {
    const Int num = term.phase.num(), den = term.phase.den();
    if (num == 0) {
      plan.re_exact += term.weight;
    } else if (den == 2) {
      plan.re_exact -= term.weight;
    } else if (den == 4) {
      plan.im_exact += num == 1 ? term.weight : -term.weight;
    } else if (2 * num < den) {
      low.push_back({term.phase, term.weight, 0});
    }
  }
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    const Int num = it->phase.num(), den = it->phase.den();
    if (num == 0 || den == 2 || den == 4 || 2 * num < den) continue;
    high.push_back({-it->phase, 0, it->weight});
  }
  // Merge, joining x with 1 - x.
  plan.pairs.reserve(low.size() + high.size());
  std::size_t i = 0, j = 0;
  while (i < low.size() || j < high.size()) {
    if (j == high.size() || (i < low.size() && low[i].x < high[j].x)) {
      plan.pairs.push_back(low[i++]);
    } else if (i == low.size() || high[j].x < low[i].x) {
      plan.pairs.push_back(high[j++]);
    } else {
      plan.pairs.push_back({low[i].x, low[i].w_plus, high[j].w_minus});
      ++i;
      ++j;
    }
  }
  return plan;
}

// Neumaier compensated accumulator.
struct Compensated {
  long double sum = 0, comp = 0;
  void add(long double v) {
    const long double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  long double value() const { return sum + comp; }
};

}  // namespace

EvaluatedSum evaluate(const ExpSum& sum, mpfr_prec_t precision_bits) {
  if (precision_bits < 53) throw std::invalid_argument("evaluate: precision must be at least 53 bits");
  const Int W = sum.total_weight();
  const long double bound = static_cast<long double>(W) * std::ldexp(1.0L, 1 - static_cast<int>(precision_bits));
  const Plan plan = make_plan(sum);

  if (precision_bits <= 56) {
    const long double two_pi = 2 * std::numbers::pi_v<long double>;
    Compensated re, im;
    for (const Pair& p : plan.pairs) {
      long double s, c;
      ::sincosl(two_pi * static_cast<long double>(p.x.num()) / static_cast<long double>(p.x.den()), &s, &c);
      re.add(static_cast<long double>(p.w_plus + p.w_minus) * c);
      im.add(static_cast<long double>(p.w_plus - p.w_minus) * s);
    }
    re.add(static_cast<long double>(plan.re_exact));
    im.add(static_cast<long double>(plan.im_exact));
    BigReal r(64), i(64);
    mpfr_set_ld(r.raw(), re.value(), MPFR_RNDN);
    mpfr_set_ld(i.raw(), im.value(), MPFR_RNDN);
    r.widen(bound);
    i.widen(bound);
    return {{std::move(r), std::move(i)}, bound, static_cast<Int>(sum.terms().size())};
  }

  // Each term is within ~2^{5-p'} |w| and each addition within W 2^{-p'}, so
  // p' = p + 10 + log2(W + 16) keeps the total far below W 2^{1-p}.
  const mpfr_prec_t work =
      precision_bits + 10 + static_cast<mpfr_prec_t>(std::ceil(std::log2(static_cast<long double>(W) + 16)));
  mpfr_t pi2, theta, s, c, re, im, tmp;
  for (mpfr_ptr v : {pi2, theta, s, c, re, im, tmp}) mpfr_init2(v, work);
  mpfr_const_pi(pi2, MPFR_RNDN);
  mpfr_mul_2ui(pi2, pi2, 1, MPFR_RNDN);
  mpfr_set_si(re, 0, MPFR_RNDN);
  mpfr_set_si(im, 0, MPFR_RNDN);
  for (const Pair& p : plan.pairs) {
    mpfr_mul_si(theta, pi2, p.x.num(), MPFR_RNDN);
    mpfr_div_si(theta, theta, p.x.den(), MPFR_RNDN);
    mpfr_sin_cos(s, c, theta, MPFR_RNDN);
    mpfr_mul_si(tmp, c, p.w_plus + p.w_minus, MPFR_RNDN);
    mpfr_add(re, re, tmp, MPFR_RNDN);
    mpfr_mul_si(tmp, s, p.w_plus - p.w_minus, MPFR_RNDN);
    mpfr_add(im, im, tmp, MPFR_RNDN);
  }
  mpfr_add_si(re, re, plan.re_exact, MPFR_RNDN);
  mpfr_add_si(im, im, plan.im_exact, MPFR_RNDN);
  BigReal r(work), i(work);
  mpfr_set(r.raw(), re, MPFR_RNDN);
  mpfr_set(i.raw(), im, MPFR_RNDN);
  for (mpfr_ptr v : {pi2, theta, s, c, re, im, tmp}) mpfr_clear(v);
  r.widen(bound);
  i.widen(bound);
  return {{std::move(r), std::move(i)}, bound, static_cast<Int>(sum.terms().size())};
}

}  // namespace kloost
