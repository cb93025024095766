#include "apth/probability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "apth/coloring.hpp"
#include "apth/errors.hpp"

namespace apth {

namespace {

void require_within_cap(std::int64_t n, int cap) {
  if (cap < 1 || cap > kMaxBruteCap) {
    throw std::invalid_argument("brute-force cap must lie in [1, " +
                                std::to_string(kMaxBruteCap) + "]");
  }
  if (n > cap) throw BruteCapExceeded(n, cap);
}

unsigned enumeration_threads(std::uint64_t work) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return work < (std::uint64_t{1} << 16) ? 1u : hw;
}

/// Calls visit(thread_state, red_mask) for every coloring of [1, n] whose
/// element 1 is red; states are merged by the caller. Complementing a
/// coloring preserves every mono count, so callers double the tallies.
template <typename State, typename Visit>
std::vector<State> enumerate_half(std::int64_t n, State init, Visit visit) {
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  const unsigned threads = enumeration_threads(half);
  std::vector<State> states(threads, init);
  const auto run = [&](unsigned t) {
    const std::uint64_t lo = half / threads * t;
    const std::uint64_t hi = t + 1 == threads ? half : half / threads * (t + 1);
    for (std::uint64_t x = lo; x < hi; ++x) visit(states[t], (x << 1) | 1);
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run, t);
  }
  return states;
}

BigCount pow2(std::int64_t e) {
  if (e < 0) throw std::invalid_argument("negative power of two");
  BigCount v = 1;
  v <<= static_cast<unsigned>(e);
  return v;
}

double scale_factor(int k) {
  // 2^(k/2), exact for even k.
  const double even = std::ldexp(1.0, k / 2);
  return k % 2 == 0 ? even : even * std::sqrt(2.0);
}

std::int64_t checked_floor_n(double value) {
  if (!(value < static_cast<double>(kMaxN))) {
    throw std::invalid_argument("scale function exceeds the 2^40 interval cap");
  }
  if (value < 1.0) throw std::invalid_argument("scale function is below 1 for these parameters");
  return static_cast<std::int64_t>(std::floor(value));
}

}  // namespace

Rational ExactDistribution::probability(std::uint64_t r) const {
  const auto it = counts.find(r);
  const std::uint64_t c = it == counts.end() ? 0 : it->second;
  return Rational(BigCount(c), BigCount(total));
}

Rational ExactDistribution::expectation() const {
  BigCount weighted = 0;
  for (const auto& [r, c] : counts) weighted += BigCount(r) * c;
  return Rational(weighted, BigCount(total));
}

Rational exact_prob_mono(int k, std::int64_t n, int cap) {
  require_valid_k(k);
  require_valid_n(n);
  require_within_cap(n, cap);
  if (n < k) return Rational(0);
  const auto tallies = enumerate_half(n, std::uint64_t{0}, [&](std::uint64_t& hits, std::uint64_t red) {
    hits += detail::has_mono_ap_words(std::span(&red, 1), n, k);
  });
  std::uint64_t mono = 0;
  for (const auto t : tallies) mono += t;
  return Rational(BigCount(mono) * 2, pow2(n));
}

ExactDistribution mono_count_distribution(int k, std::int64_t n, int cap) {
  require_valid_k(k);
  require_valid_n(n);
  require_within_cap(n, cap);
  const auto max_r = count_aps(k, n).convert_to<std::size_t>();
  const auto tallies = enumerate_half(
      n, std::vector<std::uint64_t>(max_r + 1, 0),
      [&](std::vector<std::uint64_t>& hist, std::uint64_t red) {
        ++hist[detail::count_mono_aps_words(std::span(&red, 1), n, k)];
      });
  ExactDistribution dist;
  dist.k = k;
  dist.n = n;
  dist.total = std::uint64_t{1} << n;
  for (std::size_t r = 0; r <= max_r; ++r) {
    std::uint64_t c = 0;
    for (const auto& hist : tallies) c += hist[r];
    if (c > 0) dist.counts[r] = 2 * c;
  }
  return dist;
}

BigCount mono_pair_count(const Progression& p, const Progression& q, std::int64_t s) {
  require_valid_n(s);
  if (p.length() != q.length()) {
    throw std::invalid_argument("mono_pair_count needs progressions of equal length");
  }
  if (!contained_in(p, s) || !contained_in(q, s)) {
    throw std::invalid_argument("mono_pair_count needs both progressions inside [1, " +
                                std::to_string(s) + "]");
  }
  const int k = p.length();
  const int t = intersection_size(p, q);
  if (t == 0) return 4 * pow2(s - 2 * k);
  return 2 * pow2(s - (2 * k - t));
}

BigCount mono_single_count(int k, std::int64_t s) {
  require_valid_k(k);
  require_valid_n(s);
  if (k > s) throw std::invalid_argument("mono_single_count needs k <= s");
  return pow2(s - k + 1);
}

BonferroniBound bonferroni_lower(std::uint64_t m, std::int64_t s, int k) {
  require_valid_k(k);
  require_valid_n(s);
  if (2 * static_cast<std::int64_t>(k) > s + 2) {
    throw std::invalid_argument("bonferroni_lower needs 2k <= s + 2 (exponent s-2k+2 underflows)");
  }
  const BigCount big_m = m;
  const BigCount singles = big_m * pow2(s - k + 1);
  const BigCount pairs = big_m * (big_m - 1) / 2 * pow2(s - 2 * k + 2);
  BonferroniBound out;
  out.value = singles > pairs ? BigCount(singles - pairs) : BigCount(0);
  out.strong = big_m <= pow2(k - 1);
  return out;
}

std::uint64_t union_mono_exact(const APFamily& family, std::int64_t s, int cap) {
  require_valid_n(s);
  require_within_cap(s, cap);
  if (family.n() > s) {
    throw std::invalid_argument("union_mono_exact needs every member inside [1, " +
                                std::to_string(s) + "]");
  }
  std::vector<std::uint64_t> masks;
  family.for_each([&](const Progression& p) {
    std::uint64_t mask = 0;
    for (int l = 0; l < p.length(); ++l) mask |= std::uint64_t{1} << (p.at(l) - 1);
    masks.push_back(mask);
  });
  if (masks.empty()) return 0;
  const auto tallies = enumerate_half(s, std::uint64_t{0}, [&](std::uint64_t& hits, std::uint64_t red) {
    for (const std::uint64_t mask : masks) {
      const std::uint64_t seen = red & mask;
      if (seen == 0 || seen == mask) {
        ++hits;
        return;
      }
    }
  });
  std::uint64_t hits = 0;
  for (const auto t : tallies) hits += t;
  return 2 * hits;
}

double expected_mono(int k, std::int64_t n) {
  return std::ldexp(count_aps(k, n).convert_to<double>(), 1 - k);
}

double markov_upper(int k, std::int64_t n) { return std::min(1.0, expected_mono(k, n)); }

bool BoundReport::flag(const std::string& name) const {
  for (const auto& [key, value] : flags) {
    if (key == name) return value;
  }
  throw std::out_of_range("no bound flag named " + name);
}

BoundReport thm1_p0_upper(int k, std::int64_t n, double f) {
  require_valid_k(k);
  const BlockPlan plan = block_plan(n, q_of_f(f));
  BoundReport report;
  report.bound = "thm1_p0_upper";
  report.k = k;
  report.n = n;
  report.parameter = f;
  report.q = plan.q;
  report.s = plan.s;
  report.r = plan.r;
  report.family_size = lemma_family_size(k, plan.s);

  const double s = static_cast<double>(plan.s);
  const double k3 = static_cast<double>(k) * k * k;
  const double exponent = s * s * static_cast<double>(plan.q) / (std::ldexp(1.0, k + 2) * k3);
  report.value = std::clamp(std::exp(-exponent), 0.0, 1.0);

  const BigCount size = report.family_size.convert_to<BigCount>();
  const BigCount s2 = BigCount(plan.s) * plan.s;
  const BigCount big_k3 = BigCount(k) * k * k;
  report.flags = {
      {"family_size_in_window", 4 * big_k3 * size >= s2 && big_k3 * size <= s2},
      {"family_size_le_2_pow_k_minus_1", size <= pow2(k - 1)},
  };
  return report;
}

double thm2_p0_lower(int k, double g) {
  require_valid_k(k);
  if (!(g >= 0.0 && g <= 1.0)) throw std::invalid_argument("g must lie in [0, 1]");
  const double raw = (k - 2.0 - k * g * g) / (k - 2.0);
  return std::clamp(raw, 0.0, 1.0);
}

std::int64_t nplus(int k, double f) {
  require_valid_k(k);
  if (!(f >= 1.0) || !std::isfinite(f)) throw std::invalid_argument("f must be a finite real >= 1");
  const double kk = static_cast<double>(k);
  return checked_floor_n(scale_factor(k) * kk * std::sqrt(kk) * f);
}

std::int64_t nminus(int k, double g) {
  require_valid_k(k);
  if (!(g > 0.0 && g <= 1.0)) throw std::invalid_argument("g must lie in (0, 1]");
  return checked_floor_n(scale_factor(k) * std::sqrt(static_cast<double>(k)) * g);
}

}  // namespace apth
