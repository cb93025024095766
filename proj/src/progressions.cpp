#include "apth/progressions.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace apth {

void require_valid_k(int k) {
  if (k < 3) {
    throw std::invalid_argument("k must be >= 3 (got " + std::to_string(k) + ")");
  }
}

void require_valid_n(std::int64_t n) {
  if (n < 1 || n > kMaxN) {
    throw std::invalid_argument("n must lie in [1, 2^40] (got " + std::to_string(n) + ")");
  }
}

Progression::Progression(std::int64_t start, std::int64_t diff, int length)
    : start_(start), diff_(diff), length_(length) {
  if (start < 1) throw std::invalid_argument("progression start must be >= 1");
  if (diff < 1) throw std::invalid_argument("progression diff must be >= 1");
  if (length < 3) throw std::invalid_argument("progression length must be >= 3");
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  if (diff > (kMax - start) / (length - 1)) {
    throw std::invalid_argument("progression last element overflows int64");
  }
}

std::vector<std::int64_t> elements(const Progression& p) {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(p.length()));
  for (int l = 0; l < p.length(); ++l) out.push_back(p.at(l));
  return out;
}

bool contained_in(const Progression& p, std::int64_t n) noexcept {
  return p.start() >= 1 && p.last() <= n;
}

std::int64_t max_diff(int k, std::int64_t n) {
  require_valid_k(k);
  require_valid_n(n);
  return (n - 1) / (k - 1);
}

Count count_aps(int k, std::int64_t n) {
  const std::int64_t d_max = max_diff(k, n);
  if (d_max == 0) return 0;
  const Count big_d = static_cast<std::uint64_t>(d_max);
  const Count total = Count(static_cast<std::uint64_t>(n)) * big_d;
  const Count used = Count(static_cast<std::uint64_t>(k - 1)) * big_d * (big_d + 1) / 2;
  return total - used;
}

namespace detail {

DiffRange checked_diff_range(int k, std::int64_t n, std::optional<DiffRange> range) {
  const std::int64_t d_max = max_diff(k, n);
  if (!range) return {1, d_max};
  if (range->lo < 1 || range->hi < range->lo || range->hi > d_max) {
    throw std::invalid_argument("diff range [" + std::to_string(range->lo) + ", " +
                                std::to_string(range->hi) + "] is not inside [1, " +
                                std::to_string(d_max) + "]");
  }
  return *range;
}

}  // namespace detail

std::vector<Progression> enumerate_aps(int k, std::int64_t n, std::optional<DiffRange> range) {
  std::vector<Progression> out;
  enumerate_aps(k, n, range, [&](const Progression& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

int intersection_size(const Progression& p, const Progression& q) noexcept {
  int i = 0;
  int j = 0;
  int common = 0;
  while (i < p.length() && j < q.length()) {
    const std::int64_t x = p.at(i);
    const std::int64_t y = q.at(j);
    if (x == y) {
      ++common;
      ++i;
      ++j;
    } else if (x < y) {
      ++i;
    } else {
      ++j;
    }
  }
  return common;
}

}  // namespace apth
