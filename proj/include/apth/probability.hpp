#pragma once

// Exact small-scale probabilities by enumerating every 2-coloring, plus
// evaluators for the closed-form bounds on monochromatic k-APs.
//
// Exact quantities use integer or rational arithmetic. Bound evaluators use
// double precision.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "apth/family.hpp"
#include "apth/progressions.hpp"

namespace apth {

using BigCount = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kDefaultBruteCap = 26;
/// Hard limit: a coloring must fit one machine word.
inline constexpr int kMaxBruteCap = 63;

/// Colorings of [1, n] grouped by how many monochromatic k-APs they contain.
struct ExactDistribution {
  int k = 0;
  std::int64_t n = 0;
  /// r -> number of colorings with exactly r monochromatic k-APs.
  std::map<std::uint64_t, std::uint64_t> counts;
  /// 2^n.
  std::uint64_t total = 0;

  /// counts[r] / 2^n.
  Rational probability(std::uint64_t r) const;
  /// sum_r r * counts[r] / 2^n.
  Rational expectation() const;
};

/// Fraction of colorings of [1, n] containing a monochromatic k-AP, exact.
/// Throws BruteCapExceeded when n > cap.
Rational exact_prob_mono(int k, std::int64_t n, int cap = kDefaultBruteCap);

ExactDistribution mono_count_distribution(int k, std::int64_t n, int cap = kDefaultBruteCap);

/// Colorings of [1, s] under which both p and q are monochromatic. With
/// t = |p ∩ q|: 4 * 2^(s-2k) if t = 0, else 2 * 2^(s-(2k-t)). Both reduce to
/// 2^(s-2k+2) when t <= 1.
BigCount mono_pair_count(const Progression& p, const Progression& q, std::int64_t s);

/// 2^(s-k+1): colorings of [1, s] making one fixed k-AP monochromatic.
BigCount mono_single_count(int k, std::int64_t s);

struct BonferroniBound {
  /// max(0, m * 2^(s-k+1) - C(m,2) * 2^(s-2k+2)).
  BigCount value;
  /// m <= 2^(k-1), which makes value >= m * 2^(s-k).
  bool strong = false;
};

/// Second-order inclusion-exclusion lower bound on the number of colorings
/// of [1, s] making at least one of m pairwise almost-disjoint k-APs
/// monochromatic. Requires 2k <= s + 2.
BonferroniBound bonferroni_lower(std::uint64_t m, std::int64_t s, int k);

/// Colorings of [1, s] making at least one member monochromatic, by
/// enumeration. Members must lie in [1, s].
std::uint64_t union_mono_exact(const APFamily& family, std::int64_t s,
                               int cap = kDefaultBruteCap);

/// count_aps(k, n) * 2^(1-k).
double expected_mono(int k, std::int64_t n);

/// min(1, expected_mono(k, n)), an upper bound on the mono probability.
double markov_upper(int k, std::int64_t n);

struct BoundReport {
  std::string bound;
  int k = 0;
  std::int64_t n = 0;
  /// f for the upper-scale bound, g for the lower-scale bound.
  double parameter = 0.0;
  std::int64_t q = 0;
  std::int64_t s = 0;
  std::int64_t r = 0;
  Count family_size = 0;
  double value = 0.0;
  /// Preconditions of the asymptotic argument, evaluated at this (k, n).
  std::vector<std::pair<std::string, bool>> flags;

  bool flag(const std::string& name) const;
};

/// Upper bound exp(-s^2 q / (2^(k+2) k^3)) on the chance that no member of
/// the per-block large-difference families is monochromatic, with
/// q = q_of_f(f) and s = floor(n/q). Flags:
///   family_size_in_window     s^2/(4k^3) <= |F_{k,s}| <= s^2/k^3
///   family_size_le_2_pow_k_minus_1
BoundReport thm1_p0_upper(int k, std::int64_t n, double f);

/// max(0, (k - 2 - k g^2) / (k - 2)), clamped to [0, 1].
double thm2_p0_lower(int k, double g);

/// floor(2^(k/2) k^(3/2) f), f >= 1.
std::int64_t nplus(int k, double f);
/// floor(2^(k/2) k^(1/2) g), g in (0, 1].
std::int64_t nminus(int k, double g);

}  // namespace apth
