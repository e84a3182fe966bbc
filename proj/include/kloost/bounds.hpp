#pragma once

// Empirical checks of Weil-type bounds, partial-sum growth and tail decay.

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "kloost/cache.hpp"
#include "kloost/kloosterman.hpp"
#include "kloost/series.hpp"

namespace kloost {

struct IntRange {
  Int lo = 1;
  Int hi = 1;
};

struct FitReport {
  double exponent = 0;
  double intercept = 0;
  double residual = 0;  // RMS of log|y| residuals
  std::pair<double, double> sample_range{0, 0};
  std::vector<std::pair<double, double>> points;  // as supplied
  std::size_t dropped_zeros = 0;
};

struct Violation {
  Int m = 0, n = 0, c = 0;
  double lhs = 0;
  double rhs = 0;
};

struct BoundReport {
  std::string check;
  std::string domain;
  std::size_t checked = 0;
  std::vector<Violation> violations;
  /// Max observed |S| / bound (for implicit-constant bounds this is the fitted constant).
  double fitted_constant = 0;
  /// Per dyadic c-window max ratio (implicit-constant checks only).
  std::vector<std::pair<Int, double>> window_constants;
  /// Set when the ratio trends upward across windows.
  bool growth_flag = false;
};

/// |S(m,n,c)| <= sigma0(c) (m,n,c)^{1/2} c^{1/2}; the evaluation error is
/// added to |S| before comparing.
BoundReport weil_check_standard(IntRange m, IntRange n, Int c_max);
/// Same bound for a theta-type multiplier over level | c <= c_max.
BoundReport weil_check_theta_type(const MultiplierSpec& spec, IntRange m, IntRange n, Int c_max);
/// |S(m,n,c,nu)| / (q^{3/2} sigma0((a,c)) sigma0(c) sqrt c ((24m-23)(24n-23),c)^{1/2})
/// for nu = (./q) nu_eta (q in {1, 3}), with 24m - 23 = a^2 * squarefree.
BoundReport weil_check_eta_twist(Int q, IntRange m, IntRange n, Int c_max);

struct PartialSum {
  std::complex<long double> value;
  long double error = 0;
};

/// sum_{level | c <= X} S(m,n,c,nu) / c.
PartialSum partial_sum(Int m, Int n, const MultiplierSpec& spec, Int X, SumCache* cache = nullptr);
/// Partial sums at every X of an ascending grid, sharing one pass over c.
std::vector<PartialSum> partial_sums(Int m, Int n, const MultiplierSpec& spec, const std::vector<Int>& grid,
                                     SumCache* cache = nullptr);

/// Log-log least squares of |y| against x. Needs at least 8 points with
/// x > 0; zero y values are dropped and counted. Throws if all y are zero.
FitReport decay_fit(const std::vector<std::pair<double, double>>& points);

/// `count` integers spaced geometrically over [lo, hi], ascending and distinct.
std::vector<Int> log_grid(Int lo, Int hi, std::size_t count);

struct CancellationReport {
  FitReport fit;
  bool below_half = false;        // exponent < 1/2
  bool below_sixth = false;       // exponent <= 1/6 + tolerance
  double tolerance = 0.1;
  bool within_hypotheses = true;  // m~ > 0 and n~ < 0
};

CancellationReport cancellation_experiment(Int m, Int n, const MultiplierSpec& spec, const std::vector<Int>& grid,
                                           SumCache* cache = nullptr);
/// Harness control: every sum replaced by phi(c) (no cancellation), so the
/// fitted exponent is close to 1.
CancellationReport cancellation_control(const std::vector<Int>& grid);

/// sum_{level | c in [y, 2y)} |S(m,n,c,nu)|/c divided by (sqrt(2y) - sqrt(y))
/// over dyadic windows from y = first up to c_max; fitted_constant is the max.
BoundReport average_weil(const MultiplierSpec& spec, Int m, Int n, Int first, Int c_max, SumCache* cache = nullptr);

struct TailDecayReport {
  FitReport fit;
  std::vector<std::pair<Int, double>> tails;  // (n, R_j(n, alpha sqrt n))
  int j = 1;
  double alpha = 5;
};

/// R_j(n, alpha sqrt n) for n in [lo, hi] with the given step, then decay_fit.
TailDecayReport tail_decay_experiment(int j, Int lo, Int hi, double alpha, Int step = 1, const SeriesOptions& opt = {});

}  // namespace kloost
