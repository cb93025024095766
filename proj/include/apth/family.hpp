#pragma once

// Almost-disjoint families of k-APs: the large-difference family F_{k,n},
// greedy maximal families, and the block decomposition n = q*s + r.

#include <cstdint>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "apth/progressions.hpp"

namespace apth {

enum class ScanOrder { kByDiffStart, kByStartDiff };

/// A set of k-APs inside [1, n], sorted by (diff, start).
///
/// Members are stored as runs of consecutive starts sharing one diff. The
/// large-difference family at n = 10^6 has ~10^10 members but only ~10^5
/// runs, so this is the only representation that scales.
class APFamily {
 public:
  /// Members (first_start + i, diff) for 0 <= i < count.
  struct Run {
    std::int64_t diff;
    std::int64_t first_start;
    std::int64_t count;

    friend bool operator==(const Run&, const Run&) = default;
  };

  /// Empty family over [1, n].
  APFamily(int k, std::int64_t n);

  /// Validates (length k, contained in [1,n], no duplicates) and sorts.
  static APFamily from_members(int k, std::int64_t n, std::vector<Progression> members);

  int k() const noexcept { return k_; }
  std::int64_t n() const noexcept { return n_; }
  Count size() const noexcept { return size_; }
  bool empty() const noexcept { return runs_.empty(); }
  const std::vector<Run>& runs() const noexcept { return runs_; }

  /// True when the constructor guarantees almost-disjointness (the
  /// large-difference family and greedy output). Never set by from_members.
  bool certified_almost_disjoint() const noexcept { return certified_; }

  /// Visits members in (diff, start) order. A visitor returning bool stops
  /// on false.
  template <typename Visitor>
  void for_each(Visitor&& visit) const;

  /// Throws std::length_error above kMaxMaterialized members.
  std::vector<Progression> members() const;

  static constexpr std::uint64_t kMaxMaterialized = std::uint64_t{1} << 27;

  friend bool operator==(const APFamily&, const APFamily&) = default;

 private:
  friend APFamily lemma_family(int k, std::int64_t n);
  friend APFamily greedy_max_family(int, std::int64_t, bool, ScanOrder);

  void append_sorted(std::int64_t start, std::int64_t diff);

  int k_;
  std::int64_t n_;
  std::vector<Run> runs_;
  Count size_ = 0;
  bool certified_ = false;
};

/// All k-APs in [1, n] with n/k <= d < n/(k-1), compared exactly as
/// k*d >= n and (k-1)*d < n. May be empty for small n.
APFamily lemma_family(int k, std::int64_t n);

/// Closed-form member count of lemma_family(k, n).
Count lemma_family_size(int k, std::int64_t n);

/// The diff interval [lo, hi] used by lemma_family, or nullopt if empty.
std::optional<DiffRange> lemma_diff_range(int k, std::int64_t n);

struct DisjointnessCheck {
  bool almost_disjoint = true;
  /// One pair sharing >= 2 elements when almost_disjoint is false.
  std::optional<std::pair<Progression, Progression>> witness;
};

/// Checks that every two distinct members share at most one element.
/// Uses an element -> member inverted index (all-pairs merge under 1000
/// members). Ignores the certification flag.
DisjointnessCheck is_almost_disjoint(const APFamily& family);

/// Scans every k-AP of [1, n] in `order` and keeps each one that shares at
/// most one element with everything kept so far. With seed_with_lemma the
/// large-difference family is inserted first.
APFamily greedy_max_family(int k, std::int64_t n, bool seed_with_lemma,
                           ScanOrder order = ScanOrder::kByDiffStart);

/// |F| * (2k - 2) / n^2. Rejects families that are not almost disjoint;
/// uncertified families are checked with is_almost_disjoint first.
double ck_estimate(const APFamily& family);

struct Interval {
  std::int64_t lo;
  std::int64_t hi;

  std::int64_t length() const noexcept { return hi - lo + 1; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// n = q*s + r with 0 <= r < s: q blocks of length s, then [q*s+1, n] if r > 0.
struct BlockPlan {
  std::int64_t n;
  std::int64_t q;
  std::int64_t s;
  std::int64_t r;
  std::vector<Interval> blocks;
};

/// s = floor(n/q), r = n - q*s. Requires r < s (always true when q*q <= n).
BlockPlan block_plan(std::int64_t n, std::int64_t q);

/// floor(f^(4/3)), exact for integer f. Rejects f < 1.
std::int64_t q_of_f(double f);

template <typename Visitor>
void APFamily::for_each(Visitor&& visit) const {
  for (const Run& run : runs_) {
    for (std::int64_t i = 0; i < run.count; ++i) {
      const Progression p(run.first_start + i, run.diff, k_);
      if constexpr (std::is_same_v<std::invoke_result_t<Visitor&, const Progression&>, bool>) {
        if (!visit(p)) return;
      } else {
        visit(p);
      }
    }
  }
}

}  // namespace apth
