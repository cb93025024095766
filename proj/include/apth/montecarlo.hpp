#pragma once

// Monte Carlo estimation of P(random 2-coloring of [1, n] has a mono k-AP),
// threshold location in n, and scaling reports.
//
// Sample i always uses RandomStream(seed, i), and the coloring of [1, n] is
// the first n bits of that stream. Two consequences:
//   * results do not depend on the worker count;
//   * for a fixed sample, the coloring of [1, n] is a prefix of the
//     coloring of [1, n+1], so success counts are nondecreasing in n.

#include <cstdint>
#include <utility>
#include <vector>

namespace apth {

struct ProbEstimate {
  int k = 0;
  std::int64_t n = 0;
  std::uint64_t samples = 0;
  std::uint64_t successes = 0;
  double p_hat = 0.0;
  /// 95% Wilson score interval; Clopper-Pearson at 0 or all successes.
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t seed = 0;

  /// sqrt(p_hat (1 - p_hat) / samples).
  double standard_error() const;
  bool ci_contains(double p) const { return ci_low <= p && p <= ci_high; }

  friend bool operator==(const ProbEstimate&, const ProbEstimate&) = default;
};

/// 95% two-sided interval for a binomial proportion.
std::pair<double, double> proportion_interval(std::uint64_t successes, std::uint64_t samples);

ProbEstimate make_estimate(int k, std::int64_t n, std::uint64_t samples, std::uint64_t successes,
                           std::uint64_t seed);

/// Counts samples in [first, first + count) whose coloring of [1, n] has a
/// monochromatic k-AP.
std::uint64_t count_successes(int k, std::int64_t n, std::uint64_t first, std::uint64_t count,
                              std::uint64_t seed, unsigned workers);

ProbEstimate estimate_prob(int k, std::int64_t n, std::uint64_t samples, std::uint64_t seed,
                           unsigned workers = 1);

struct ThresholdOptions {
  /// Bracketing fails past this n.
  std::int64_t ceiling = std::int64_t{1} << 32;
  /// Samples may be doubled up to this multiple of the initial budget.
  std::uint64_t max_sample_factor = 8;
  unsigned workers = 1;
};

struct ThresholdResult {
  int k = 0;
  double target = 0.0;
  std::int64_t n_star = 0;
  std::int64_t bracket_low = 0;
  std::int64_t bracket_high = 0;
  /// Final per-point sample budget (after any doubling).
  std::uint64_t samples_per_point = 0;
  std::uint64_t seed = 0;
  /// Every estimate taken, in order.
  std::vector<ProbEstimate> trace;

  friend bool operator==(const ThresholdResult&, const ThresholdResult&) = default;
};

/// Smallest n (to within max(1, ceil(n/100))) whose estimated probability
/// reaches `target`: exponential bracketing from max(k, nminus(k,1)/4), then
/// bisection. If both final endpoints' intervals contain the target, the
/// budget doubles and the bracket is repaired, up to max_sample_factor.
/// Requires target in [0.05, 0.95]; throws SearchCeilingExceeded.
ThresholdResult threshold_search(int k, double target, std::uint64_t samples, std::uint64_t seed,
                                 const ThresholdOptions& options = {});

struct ScalingRow {
  int k = 0;
  std::int64_t n_star = 0;
  double log2_n_star = 0.0;
  /// n_star / (2^(k/2) k^(1/2))
  double ratio_sqrt = 0.0;
  /// n_star / (2^(k/2) k^(3/2))
  double ratio_3half = 0.0;

  friend bool operator==(const ScalingRow&, const ScalingRow&) = default;
};

struct ScalingReport {
  double target = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<ScalingRow> rows;
  /// Least-squares slope of log2(n_star) against k.
  double slope = 0.0;
  /// n_star(k+1) > n_star(k) across the whole range.
  bool strictly_increasing = true;
};

ScalingReport scaling_report(int k_low, int k_high, double target, std::uint64_t samples,
                             std::uint64_t seed, const ThresholdOptions& options = {});

/// Least-squares slope of ys against xs.
double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace apth
