#include "apth/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>

#include "apth/coloring.hpp"
#include "apth/errors.hpp"
#include "apth/probability.hpp"
#include "apth/progressions.hpp"
#include "apth/random_stream.hpp"

namespace apth {

namespace {

constexpr double kZ95 = 1.959963984540054;

std::uint64_t count_range(int k, std::int64_t n, std::uint64_t first, std::uint64_t count,
                          std::uint64_t seed) {
  std::vector<std::uint64_t> words(Coloring::word_count(n));
  const std::int64_t tail = n - 64 * static_cast<std::int64_t>(words.size() - 1);
  const std::uint64_t tail_mask = tail >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << tail) - 1;
  std::uint64_t hits = 0;
  for (std::uint64_t i = first; i < first + count; ++i) {
    RandomStream stream(seed, i);
    for (auto& w : words) w = stream.next_u64();
    words.back() &= tail_mask;
    hits += detail::has_mono_ap_words(words, n, k);
  }
  return hits;
}

}  // namespace

double ProbEstimate::standard_error() const {
  if (samples == 0) return 0.0;
  return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(samples));
}

std::pair<double, double> proportion_interval(std::uint64_t successes, std::uint64_t samples) {
  if (samples == 0) throw std::invalid_argument("proportion interval needs samples > 0");
  if (successes > samples) throw std::invalid_argument("successes exceed samples");
  const double m = static_cast<double>(samples);
  if (successes == 0) return {0.0, 1.0 - std::pow(0.025, 1.0 / m)};
  if (successes == samples) return {std::pow(0.025, 1.0 / m), 1.0};
  const double p = static_cast<double>(successes) / m;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / m;
  const double center = (p + z2 / (2.0 * m)) / denom;
  const double half = kZ95 * std::sqrt(p * (1.0 - p) / m + z2 / (4.0 * m * m)) / denom;
  return {std::clamp(center - half, 0.0, p), std::clamp(center + half, p, 1.0)};
}

ProbEstimate make_estimate(int k, std::int64_t n, std::uint64_t samples, std::uint64_t successes,
                           std::uint64_t seed) {
  const auto [lo, hi] = proportion_interval(successes, samples);
  return {k,  n,  samples, successes, static_cast<double>(successes) / static_cast<double>(samples),
          lo, hi, seed};
}

std::uint64_t count_successes(int k, std::int64_t n, std::uint64_t first, std::uint64_t count,
                              std::uint64_t seed, unsigned workers) {
  require_valid_k(k);
  require_valid_n(n);
  if (workers == 0) throw std::invalid_argument("workers must be >= 1");
  if (n < k || count == 0) return 0;
  const std::uint64_t used = std::min<std::uint64_t>(workers, count);
  if (used == 1) return count_range(k, n, first, count, seed);

  std::vector<std::uint64_t> partial(used, 0);
  {
    std::vector<std::jthread> pool;
    for (std::uint64_t t = 0; t < used; ++t) {
      const std::uint64_t lo = first + count / used * t;
      const std::uint64_t hi = t + 1 == used ? first + count : first + count / used * (t + 1);
      pool.emplace_back([&, t, lo, hi] { partial[t] = count_range(k, n, lo, hi - lo, seed); });
    }
  }
  std::uint64_t hits = 0;
  for (const auto p : partial) hits += p;
  return hits;
}

ProbEstimate estimate_prob(int k, std::int64_t n, std::uint64_t samples, std::uint64_t seed,
                           unsigned workers) {
  if (samples == 0) throw std::invalid_argument("samples must be >= 1");
  return make_estimate(k, n, samples, count_successes(k, n, 0, samples, seed, workers), seed);
}

namespace {

/// Estimates keyed by n. Raising the budget extends earlier tallies with the
/// new sample indices instead of recounting.
class EstimateCache {
 public:
  EstimateCache(int k, std::uint64_t seed, unsigned workers, std::vector<ProbEstimate>& trace)
      : k_(k), seed_(seed), workers_(workers), trace_(trace) {}

  const ProbEstimate& at(std::int64_t n, std::uint64_t samples) {
    auto [it, inserted] = tallies_.try_emplace(n, Tally{});
    Tally& tally = it->second;
    if (inserted || tally.samples != samples) {
      if (tally.samples < samples) {
        tally.successes +=
            count_successes(k_, n, tally.samples, samples - tally.samples, seed_, workers_);
      } else {
        tally.successes = count_successes(k_, n, 0, samples, seed_, workers_);
      }
      tally.samples = samples;
      tally.estimate = make_estimate(k_, n, samples, tally.successes, seed_);
      trace_.push_back(tally.estimate);
    }
    return tally.estimate;
  }

 private:
  struct Tally {
    std::uint64_t samples = 0;
    std::uint64_t successes = 0;
    ProbEstimate estimate;
  };

  int k_;
  std::uint64_t seed_;
  unsigned workers_;
  std::vector<ProbEstimate>& trace_;
  std::map<std::int64_t, Tally> tallies_;
};

std::int64_t granularity(std::int64_t n) {
  return std::max<std::int64_t>(1, (n + 99) / 100);
}

}  // namespace

ThresholdResult threshold_search(int k, double target, std::uint64_t samples, std::uint64_t seed,
                                 const ThresholdOptions& options) {
  require_valid_k(k);
  if (!(target >= 0.05 && target <= 0.95)) {
    throw std::invalid_argument("threshold target must lie in [0.05, 0.95]");
  }
  if (samples == 0) throw std::invalid_argument("samples must be >= 1");
  if (options.max_sample_factor == 0) throw std::invalid_argument("max_sample_factor must be >= 1");

  ThresholdResult result;
  result.k = k;
  result.target = target;
  result.seed = seed;
  EstimateCache cache(k, seed, options.workers, result.trace);
  std::uint64_t budget = samples;
  const auto reaches = [&](std::int64_t n) { return cache.at(n, budget).p_hat >= target; };
  // No k-AP fits below k, so p(k-1) = 0 < target without sampling.
  const std::int64_t floor_n = k - 1;

  std::int64_t lo = 0;
  std::int64_t hi = 0;
  const std::int64_t start = std::max<std::int64_t>(k, nminus(k, 1.0) / 4);
  if (reaches(start)) {
    hi = start;
    lo = start;
    while (true) {
      const std::int64_t next = std::max(floor_n, lo / 2);
      if (next == floor_n) {
        lo = floor_n;
        break;
      }
      if (!reaches(next)) {
        lo = next;
        break;
      }
      hi = lo = next;
    }
  } else {
    lo = start;
    hi = start * 2;
    while (true) {
      if (hi > options.ceiling) throw SearchCeilingExceeded(k, options.ceiling);
      if (reaches(hi)) break;
      lo = hi;
      hi *= 2;
    }
  }

  const std::uint64_t max_budget = samples * options.max_sample_factor;
  while (true) {
    while (hi - lo > granularity(hi)) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (reaches(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    if (budget * 2 > max_budget) break;
    const bool lo_ambiguous = lo == floor_n ? false : cache.at(lo, budget).ci_contains(target);
    if (!(lo_ambiguous && cache.at(hi, budget).ci_contains(target))) break;

    budget *= 2;
    std::int64_t width = std::max<std::int64_t>(1, hi - lo);
    while (!reaches(hi)) {
      lo = hi;
      hi += width;
      width *= 2;
      if (hi > options.ceiling) throw SearchCeilingExceeded(k, options.ceiling);
    }
    width = std::max<std::int64_t>(1, hi - lo);
    while (lo > floor_n && reaches(lo)) {
      hi = lo;
      lo = std::max(floor_n, lo - width);
      width *= 2;
    }
  }

  // Pin both endpoints at the final budget.
  if (lo > floor_n) cache.at(lo, budget);
  cache.at(hi, budget);
  result.n_star = hi;
  result.bracket_low = lo;
  result.bracket_high = hi;
  result.samples_per_point = budget;
  return result;
}

double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("slope needs at least two paired points");
  }
  const double m = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

ScalingReport scaling_report(int k_low, int k_high, double target, std::uint64_t samples,
                             std::uint64_t seed, const ThresholdOptions& options) {
  if (k_low < 3 || k_high < k_low) {
    throw std::invalid_argument("scaling report needs 3 <= k_low <= k_high");
  }
  ScalingReport report;
  report.target = target;
  report.samples = samples;
  report.seed = seed;
  std::vector<double> ks;
  std::vector<double> logs;
  for (int k = k_low; k <= k_high; ++k) {
    const ThresholdResult t = threshold_search(k, target, samples, seed, options);
    const double n_star = static_cast<double>(t.n_star);
    const double base = std::ldexp(std::pow(2.0, (k % 2) * 0.5), k / 2);
    const double root_k = std::sqrt(static_cast<double>(k));
    ScalingRow row{k, t.n_star, std::log2(n_star), n_star / (base * root_k),
                   n_star / (base * root_k * k)};
    if (!report.rows.empty() && row.n_star <= report.rows.back().n_star) {
      report.strictly_increasing = false;
    }
    report.rows.push_back(row);
    ks.push_back(k);
    logs.push_back(row.log2_n_star);
  }
  report.slope = report.rows.size() >= 2 ? least_squares_slope(ks, logs) : 0.0;
  return report;
}

}  // namespace apth
