#include "kloost/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "kloost/parallel.hpp"

namespace kloost {

namespace {

// Upper bound on |value| folding in the certified component errors.
double abs_upper(const EvaluatedSum& e) {
  const long double re = e.value.re.to_long_double(), im = e.value.im.to_long_double();
  return static_cast<double>(std::hypot(re, im) + 2 * e.error);
}

// Slack for the double rounding in the right-hand side.
constexpr double kRhsSlack = 1 + 0x1p-40;

void check_ranges(IntRange m, IntRange n, Int c_max) {
  if (m.lo > m.hi || n.lo > n.hi || c_max < 1) throw std::invalid_argument("bound check: empty range");
}

std::string domain_str(IntRange m, IntRange n, Int c_max, const std::string& extra = {}) {
  return "m=" + std::to_string(m.lo) + ".." + std::to_string(m.hi) + " n=" + std::to_string(n.lo) + ".." +
         std::to_string(n.hi) + " c<=" + std::to_string(c_max) + extra;
}

double weil_rhs(Int m, Int n, Int c) {
  const Int g = gcd(gcd(m, n), c);
  return static_cast<double>(sigma0(c)) * std::sqrt(static_cast<double>(g)) * std::sqrt(static_cast<double>(c));
}

template <class MakeSum>
BoundReport hard_bound(std::string check, IntRange m, IntRange n, Int c_max, Int step, MakeSum make) {
  check_ranges(m, n, c_max);
  BoundReport r;
  r.check = std::move(check);
  r.domain = domain_str(m, n, c_max, step > 1 ? " (" + std::to_string(step) + "|c)" : "");
  for (Int c = step; c <= c_max; c += step)
    for (Int mm = m.lo; mm <= m.hi; ++mm)
      for (Int nn = n.lo; nn <= n.hi; ++nn) {
        const double lhs = abs_upper(evaluate(make(mm, nn, c), 53));
        const double rhs = weil_rhs(mm, nn, c);
        ++r.checked;
        r.fitted_constant = std::max(r.fitted_constant, lhs / rhs);
        if (lhs > rhs * kRhsSlack) r.violations.push_back({mm, nn, c, lhs, rhs});
      }
  return r;
}

}  // namespace

BoundReport weil_check_standard(IntRange m, IntRange n, Int c_max) {
  return hard_bound("weil-standard", m, n, c_max, 1, [](Int a, Int b, Int c) { return standard_S(a, b, c); });
}

BoundReport weil_check_theta_type(const MultiplierSpec& spec, IntRange m, IntRange n, Int c_max) {
  if (spec.base() != MultiplierBase::Theta) throw std::invalid_argument("weil_check_theta_type: multiplier must be theta type");
  return hard_bound("weil-theta:" + spec.id(), m, n, c_max, spec.level(),
                    [&](Int a, Int b, Int c) { return generalized_S(a, b, c, spec); });
}

BoundReport weil_check_eta_twist(Int q, IntRange m, IntRange n, Int c_max) {
  if (q != 1 && q != 3) throw std::invalid_argument("weil_check_eta_twist: q must be 1 or 3");
  check_ranges(m, n, c_max);
  const MultiplierSpec spec = q == 1 ? MultiplierSpec::eta() : MultiplierSpec::quad_twist(MultiplierSpec::eta(), -3, 3);
  BoundReport r;
  r.check = "weil-eta-twist:q=" + std::to_string(q);
  r.domain = domain_str(m, n, c_max, q > 1 ? " (3|c)" : "");
  std::vector<std::pair<Int, double>> windows;
  for (Int c = q; c <= c_max; c += q) {
    const Int window = Int{1} << static_cast<int>(std::floor(std::log2(static_cast<double>(c))));
    if (windows.empty() || windows.back().first != window) windows.push_back({window, 0});
    for (Int mm = m.lo; mm <= m.hi; ++mm) {
      const Int M = checked_sub(checked_mul(24, mm), 23);
      const Int alpha = square_decompose(M < 0 ? -M : M, 1).w;
      for (Int nn = n.lo; nn <= n.hi; ++nn) {
        const Int Nn = checked_sub(checked_mul(24, nn), 23);
        const Int g = gcd(checked_mul(M, Nn), c);
        const double rhs = std::pow(static_cast<double>(q), 1.5) * static_cast<double>(sigma0(gcd(alpha, c))) *
                           static_cast<double>(sigma0(c)) * std::sqrt(static_cast<double>(c)) *
                           std::sqrt(static_cast<double>(g));
        const double ratio = abs_upper(evaluate(generalized_S(mm, nn, c, spec), 53)) / rhs;
        ++r.checked;
        r.fitted_constant = std::max(r.fitted_constant, ratio);
        windows.back().second = std::max(windows.back().second, ratio);
      }
    }
  }
  r.window_constants = windows;
  // Growth: the last window's constant well above everything before it.
  if (windows.size() >= 3) {
    double earlier = 0;
    for (std::size_t i = 0; i + 1 < windows.size(); ++i) earlier = std::max(earlier, windows[i].second);
    r.growth_flag = windows.back().second > 4 * earlier;
  }
  return r;
}

std::vector<PartialSum> partial_sums(Int m, Int n, const MultiplierSpec& spec, const std::vector<Int>& grid,
                                     SumCache* cache) {
  if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("partial_sums: grid must be ascending");
  std::vector<PartialSum> out;
  out.reserve(grid.size());
  const Int N = spec.level();
  long double re = 0, im = 0, err = 0;
  Int c = N;
  for (Int X : grid) {
    for (; c <= X; c += N) {
      const EvaluatedSum e = evaluate(cached_generalized_S(cache, m, n, c, spec), 53);
      const long double cc = static_cast<long double>(c);
      re += e.value.re.to_long_double() / cc;
      im += e.value.im.to_long_double() / cc;
      // Component errors plus the long double division and accumulation.
      err += (e.error + (std::fabs(re) + std::fabs(im)) * 0x1p-62L) / cc + 0x1p-62L * (std::fabs(re) + std::fabs(im));
    }
    out.push_back({{re, im}, err});
  }
  return out;
}

PartialSum partial_sum(Int m, Int n, const MultiplierSpec& spec, Int X, SumCache* cache) {
  if (X < spec.level()) return {};
  return partial_sums(m, n, spec, {X}, cache).front();
}

FitReport decay_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 8) throw std::invalid_argument("decay_fit: need at least 8 points");
  FitReport f;
  f.points = points;
  std::vector<std::pair<double, double>> logs;
  double lo = points.front().first, hi = lo;
  for (const auto& [x, y] : points) {
    if (!(x > 0)) throw std::invalid_argument("decay_fit: x must be positive");
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    if (y == 0) {
      ++f.dropped_zeros;
      continue;
    }
    logs.push_back({std::log(x), std::log(std::fabs(y))});
  }
  if (logs.empty()) throw std::invalid_argument("decay_fit: all y values are zero");
  if (logs.size() < 2) throw std::invalid_argument("decay_fit: fewer than two non-zero points");
  f.sample_range = {lo, hi};
  const double k = static_cast<double>(logs.size());
  double sx = 0, sy = 0;
  for (const auto& [x, y] : logs) {
    sx += x;
    sy += y;
  }
  const double mx = sx / k, my = sy / k;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : logs) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0) throw std::invalid_argument("decay_fit: x values must not all coincide");
  f.exponent = sxy / sxx;
  f.intercept = my - f.exponent * mx;
  double ss = 0;
  for (const auto& [x, y] : logs) {
    const double e = y - (f.intercept + f.exponent * x);
    ss += e * e;
  }
  f.residual = std::sqrt(ss / k);
  return f;
}

std::vector<Int> log_grid(Int lo, Int hi, std::size_t count) {
  if (lo < 1 || hi < lo || count < 2) throw std::invalid_argument("log_grid: need 1 <= lo <= hi and count >= 2");
  std::vector<Int> g;
  const double a = std::log(static_cast<double>(lo)), b = std::log(static_cast<double>(hi));
  for (std::size_t i = 0; i < count; ++i) {
    Int x = static_cast<Int>(std::llround(std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1))));
    x = std::clamp(x, lo, hi);
    if (g.empty() || x > g.back()) g.push_back(x);
  }
  return g;
}

namespace {

CancellationReport summarize(const std::vector<Int>& grid, const std::vector<long double>& mags) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < grid.size(); ++i) pts.push_back({static_cast<double>(grid[i]), static_cast<double>(mags[i])});
  CancellationReport r;
  r.fit = decay_fit(pts);
  r.below_half = r.fit.exponent < 0.5;
  r.below_sixth = r.fit.exponent <= 1.0 / 6.0 + r.tolerance;
  return r;
}

}  // namespace

CancellationReport cancellation_experiment(Int m, Int n, const MultiplierSpec& spec, const std::vector<Int>& grid,
                                           SumCache* cache) {
  const std::vector<PartialSum> sums = partial_sums(m, n, spec, grid, cache);
  std::vector<long double> mags;
  for (const auto& s : sums) mags.push_back(std::abs(s.value));
  CancellationReport r = summarize(grid, mags);
  r.within_hypotheses = Rational(m) - spec.alpha() > 0 && Rational(n) - spec.alpha() < 0;
  return r;
}

CancellationReport cancellation_control(const std::vector<Int>& grid) {
  std::vector<long double> mags;
  long double acc = 0;
  Int c = 1;
  for (Int X : grid) {
    for (; c <= X; ++c) acc += static_cast<long double>(euler_phi(c)) / static_cast<long double>(c);
    mags.push_back(acc);
  }
  return summarize(grid, mags);
}

BoundReport average_weil(const MultiplierSpec& spec, Int m, Int n, Int first, Int c_max, SumCache* cache) {
  if (first < 1 || c_max < 2 * first) throw std::invalid_argument("average_weil: need 1 <= first and 2*first <= c_max");
  BoundReport r;
  r.check = "avg-weil:" + spec.id();
  r.domain = "m=" + std::to_string(m) + " n=" + std::to_string(n) + " c in [" + std::to_string(first) + "," +
             std::to_string(c_max) + "]";
  const Int N = spec.level();
  for (Int y = first; 2 * y <= c_max; y *= 2) {
    long double total = 0;
    for (Int c = ((y + N - 1) / N) * N; c < 2 * y; c += N) {
      const EvaluatedSum e = evaluate(cached_generalized_S(cache, m, n, c, spec), 53);
      total += std::hypot(e.value.re.to_long_double(), e.value.im.to_long_double()) / static_cast<long double>(c);
      ++r.checked;
    }
    const double width = std::sqrt(2.0 * static_cast<double>(y)) - std::sqrt(static_cast<double>(y));
    const double constant = static_cast<double>(total) / width;
    r.window_constants.push_back({y, constant});
    r.fitted_constant = std::max(r.fitted_constant, constant);
  }
  double lo = r.window_constants.front().second, hi = lo;
  for (const auto& [y, k] : r.window_constants) {
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  r.growth_flag = !(hi <= 4 * lo);
  return r;
}

TailDecayReport tail_decay_experiment(int j, Int lo, Int hi, double alpha, Int step, const SeriesOptions& opt) {
  if (lo < 1 || hi < lo || step < 1) throw std::invalid_argument("tail_decay_experiment: bad range");
  std::vector<Int> ns;
  for (Int n = lo; n <= hi; n += step) ns.push_back(n);
  // Each n is independent; the serial fit afterwards keeps the result order fixed.
  SeriesOptions inner = opt;
  inner.threads = 1;
  inner.keep_terms = false;
  auto tails = parallel_map(
      ns.size(),
      [&](std::size_t i) {
        const Int n = ns[i];
        // floor(alpha sqrt n): ceil minus one unless alpha sqrt n is an integer.
        Int x = cutoff_for(alpha, n);
        if (static_cast<double>(x) > alpha * std::sqrt(static_cast<double>(n)) + 1e-9) --x;
        return tail_R(j, n, BigReal(static_cast<long>(std::max<Int>(x, 1)), 64), 0, inner).to_double();
      },
      opt.threads);
  TailDecayReport r;
  r.j = j;
  r.alpha = alpha;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    r.tails.push_back({ns[i], tails[i]});
    pts.push_back({static_cast<double>(ns[i]), tails[i]});
  }
  r.fit = decay_fit(pts);
  return r;
}

}  // namespace kloost
