#pragma once

// k-term arithmetic progressions inside integer intervals [1, n].
//
// Elements are 1-based at this API surface. Anything that maps elements to
// bit positions (see coloring.hpp) uses bit = element - 1.

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace apth {

/// Wide unsigned count. AP counts reach ~n^2/4, which overflows 64 bits once
/// n approaches the 2^40 interval cap. Overflow throws instead of wrapping.
using Count = boost::multiprecision::checked_uint128_t;

/// Largest interval length accepted anywhere in the toolkit.
inline constexpr std::int64_t kMaxN = std::int64_t{1} << 40;

/// Throws std::invalid_argument unless k >= 3.
void require_valid_k(int k);
/// Throws std::invalid_argument unless 1 <= n <= kMaxN.
void require_valid_n(std::int64_t n);

class Progression {
 public:
  /// Throws std::invalid_argument if start < 1, diff < 1, length < 3, or the
  /// last element does not fit in int64.
  Progression(std::int64_t start, std::int64_t diff, int length);

  std::int64_t start() const noexcept { return start_; }
  std::int64_t diff() const noexcept { return diff_; }
  int length() const noexcept { return length_; }
  std::int64_t last() const noexcept { return start_ + (length_ - 1) * diff_; }
  /// The (l)th element, 0 <= l < length.
  std::int64_t at(int l) const noexcept { return start_ + l * diff_; }

  friend bool operator==(const Progression&, const Progression&) = default;
  /// Orders by (diff, start, length), the canonical family order.
  friend bool operator<(const Progression& a, const Progression& b) noexcept {
    if (a.diff_ != b.diff_) return a.diff_ < b.diff_;
    if (a.start_ != b.start_) return a.start_ < b.start_;
    return a.length_ < b.length_;
  }

 private:
  std::int64_t start_;
  std::int64_t diff_;
  int length_;
};

/// [a, a+d, ..., a+(k-1)d].
std::vector<std::int64_t> elements(const Progression& p);

/// True iff every element of p lies in [1, n].
bool contained_in(const Progression& p, std::int64_t n) noexcept;

/// Number of k-APs in [1, n], in closed form:
/// sum_{d=1}^{D} (n - (k-1)d) with D = floor((n-1)/(k-1)).
Count count_aps(int k, std::int64_t n);

/// Largest common difference of a k-AP inside [1, n] (0 when n < k).
std::int64_t max_diff(int k, std::int64_t n);

/// Inclusive range of common differences.
struct DiffRange {
  std::int64_t lo;
  std::int64_t hi;
};

/// Visits every k-AP in [1, n] with diff in `range` (default: all diffs),
/// ordered by (diff, start). The visitor returns false to stop early.
/// Throws std::invalid_argument when `range` is not a nonempty subinterval
/// of [1, max_diff(k, n)].
template <typename Visitor>
void enumerate_aps(int k, std::int64_t n, std::optional<DiffRange> range, Visitor&& visit);

/// Materializing convenience wrapper around the visitor form.
std::vector<Progression> enumerate_aps(int k, std::int64_t n,
                                       std::optional<DiffRange> range = std::nullopt);

/// |elements(p) ∩ elements(q)| via a two-pointer merge.
int intersection_size(const Progression& p, const Progression& q) noexcept;

namespace detail {
DiffRange checked_diff_range(int k, std::int64_t n, std::optional<DiffRange> range);
}  // namespace detail

template <typename Visitor>
void enumerate_aps(int k, std::int64_t n, std::optional<DiffRange> range, Visitor&& visit) {
  require_valid_k(k);
  require_valid_n(n);
  if (n < k) {
    if (range) detail::checked_diff_range(k, n, range);
    return;
  }
  const DiffRange r = detail::checked_diff_range(k, n, range);
  for (std::int64_t d = r.lo; d <= r.hi; ++d) {
    const std::int64_t starts = n - (k - 1) * d;
    for (std::int64_t a = 1; a <= starts; ++a) {
      if (!visit(Progression(a, d, k))) return;
    }
  }
}

}  // namespace apth
