#include "apth/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace apth {

APFamily::APFamily(int k, std::int64_t n) : k_(k), n_(n) {
  require_valid_k(k);
  require_valid_n(n);
}

void APFamily::append_sorted(std::int64_t start, std::int64_t diff) {
  if (!runs_.empty()) {
    Run& back = runs_.back();
    if (back.diff == diff && back.first_start + back.count == start) {
      ++back.count;
      size_ += 1;
      return;
    }
  }
  runs_.push_back({diff, start, 1});
  size_ += 1;
}

APFamily APFamily::from_members(int k, std::int64_t n, std::vector<Progression> members) {
  APFamily family(k, n);
  for (const Progression& p : members) {
    if (p.length() != k) {
      throw std::invalid_argument("family member has length " + std::to_string(p.length()) +
                                  ", expected " + std::to_string(k));
    }
    if (!contained_in(p, n)) {
      throw std::invalid_argument("family member (" + std::to_string(p.start()) + ", " +
                                  std::to_string(p.diff()) + ") is not inside [1, " +
                                  std::to_string(n) + "]");
    }
  }
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw std::invalid_argument("family members must be pairwise distinct");
  }
  for (const Progression& p : members) family.append_sorted(p.start(), p.diff());
  return family;
}

std::vector<Progression> APFamily::members() const {
  if (size_ > kMaxMaterialized) {
    throw std::length_error("family too large to materialize");
  }
  std::vector<Progression> out;
  out.reserve(size_.convert_to<std::size_t>());
  for_each([&](const Progression& p) { out.push_back(p); });
  return out;
}

std::optional<DiffRange> lemma_diff_range(int k, std::int64_t n) {
  require_valid_k(k);
  require_valid_n(n);
  // Smallest d with k*d >= n, largest d with (k-1)*d < n.
  const std::int64_t lo = (n + k - 1) / k;
  const std::int64_t hi = (n - 1) / (k - 1);
  if (lo > hi) return std::nullopt;
  return DiffRange{lo, hi};
}

APFamily lemma_family(int k, std::int64_t n) {
  APFamily family(k, n);
  family.certified_ = true;
  const auto range = lemma_diff_range(k, n);
  if (!range) return family;
  for (std::int64_t d = range->lo; d <= range->hi; ++d) {
    const std::int64_t starts = n - (k - 1) * d;
    family.runs_.push_back({d, 1, starts});
    family.size_ += static_cast<std::uint64_t>(starts);
  }
  return family;
}

Count lemma_family_size(int k, std::int64_t n) {
  const auto range = lemma_diff_range(k, n);
  if (!range) return 0;
  // sum_{d=lo}^{hi} (n - (k-1)d)
  const Count terms = static_cast<std::uint64_t>(range->hi - range->lo + 1);
  const Count diff_sum = terms * Count(static_cast<std::uint64_t>(range->lo + range->hi)) / 2;
  return terms * Count(static_cast<std::uint64_t>(n)) -
         Count(static_cast<std::uint64_t>(k - 1)) * diff_sum;
}

namespace {

constexpr std::size_t kAllPairsBelow = 1000;

DisjointnessCheck all_pairs_check(const std::vector<Progression>& members) {
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (intersection_size(members[i], members[j]) >= 2) {
        return {false, std::pair{members[i], members[j]}};
      }
    }
  }
  return {};
}

DisjointnessCheck inverted_index_check(const std::vector<Progression>& members) {
  // Posting lists in CSR form over the distinct elements.
  struct Posting {
    std::int64_t element;
    std::uint32_t member;
  };
  std::vector<Posting> postings;
  const int k = members.front().length();
  postings.reserve(members.size() * static_cast<std::size_t>(k));
  for (std::size_t m = 0; m < members.size(); ++m) {
    for (int l = 0; l < k; ++l) {
      postings.push_back({members[m].at(l), static_cast<std::uint32_t>(m)});
    }
  }
  std::sort(postings.begin(), postings.end(), [](const Posting& a, const Posting& b) {
    return a.element != b.element ? a.element < b.element : a.member < b.member;
  });
  std::vector<std::int64_t> keys;
  std::vector<std::size_t> offsets;
  for (std::size_t i = 0; i < postings.size(); ++i) {
    if (i == 0 || postings[i].element != postings[i - 1].element) {
      keys.push_back(postings[i].element);
      offsets.push_back(i);
    }
  }
  offsets.push_back(postings.size());

  // For member i, stamp[j] == i marks that j already shares one element with i.
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  std::vector<std::uint32_t> stamp(members.size(), kUnset);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto tag = static_cast<std::uint32_t>(i);
    for (int l = 0; l < k; ++l) {
      const auto key = std::lower_bound(keys.begin(), keys.end(), members[i].at(l));
      const auto slot = static_cast<std::size_t>(key - keys.begin());
      for (std::size_t e = offsets[slot]; e < offsets[slot + 1]; ++e) {
        const std::uint32_t j = postings[e].member;
        if (j <= tag) continue;
        if (stamp[j] == tag) return {false, std::pair{members[i], members[j]}};
        stamp[j] = tag;
      }
    }
  }
  return {};
}

}  // namespace

DisjointnessCheck is_almost_disjoint(const APFamily& family) {
  if (family.size() > std::numeric_limits<std::uint32_t>::max() - 1) {
    throw std::length_error("family too large for the inverted-index check");
  }
  const std::vector<Progression> members = family.members();
  if (members.size() < kAllPairsBelow) return all_pairs_check(members);
  return inverted_index_check(members);
}

namespace {

/// Set of unordered element pairs {x, y} already used by some member.
class PairCover {
 public:
  explicit PairCover(std::int64_t n) : n_(n) {
    if (n <= kDenseLimit) dense_.assign(static_cast<std::size_t>(n * (n - 1) / 2), false);
  }

  bool contains(std::int64_t x, std::int64_t y) const {
    if (!dense_.empty()) return dense_[dense_index(x, y)];
    return sparse_.contains(sparse_key(x, y));
  }

  void insert(std::int64_t x, std::int64_t y) {
    if (!dense_.empty()) {
      dense_[dense_index(x, y)] = true;
    } else {
      sparse_.insert(sparse_key(x, y));
    }
  }

 private:
  static constexpr std::int64_t kDenseLimit = 16384;

  // x < y, both 1-based.
  static std::size_t dense_index(std::int64_t x, std::int64_t y) {
    return static_cast<std::size_t>((y - 1) * (y - 2) / 2 + (x - 1));
  }
  std::uint64_t sparse_key(std::int64_t x, std::int64_t y) const {
    return static_cast<std::uint64_t>(x) * static_cast<std::uint64_t>(n_ + 1) +
           static_cast<std::uint64_t>(y);
  }

  std::int64_t n_;
  std::vector<bool> dense_;
  std::unordered_set<std::uint64_t> sparse_;
};

}  // namespace

APFamily greedy_max_family(int k, std::int64_t n, bool seed_with_lemma, ScanOrder order) {
  require_valid_k(k);
  require_valid_n(n);
  if (count_aps(k, n) > std::uint64_t{1} << 32) {
    throw std::invalid_argument("greedy scan over more than 2^32 progressions is not supported");
  }

  PairCover cover(n);
  std::vector<Progression> kept;
  const auto try_insert = [&](const Progression& p) {
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        if (cover.contains(p.at(i), p.at(j))) return;
      }
    }
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) cover.insert(p.at(i), p.at(j));
    }
    kept.push_back(p);
  };

  if (seed_with_lemma) lemma_family(k, n).for_each(try_insert);

  if (order == ScanOrder::kByDiffStart) {
    enumerate_aps(k, n, std::nullopt, [&](const Progression& p) {
      try_insert(p);
      return true;
    });
  } else {
    for (std::int64_t a = 1; a + (k - 1) <= n; ++a) {
      for (std::int64_t d = 1; a + (k - 1) * d <= n; ++d) try_insert(Progression(a, d, k));
    }
  }

  APFamily family = APFamily::from_members(k, n, std::move(kept));
  family.certified_ = true;
  return family;
}

double ck_estimate(const APFamily& family) {
  if (!family.certified_almost_disjoint() && !is_almost_disjoint(family).almost_disjoint) {
    throw std::invalid_argument("ck_estimate requires an almost-disjoint family");
  }
  const double n = static_cast<double>(family.n());
  return family.size().convert_to<double>() * (2.0 * family.k() - 2.0) / (n * n);
}

BlockPlan block_plan(std::int64_t n, std::int64_t q) {
  require_valid_n(n);
  if (q < 1) throw std::invalid_argument("block count q must be >= 1");
  if (q > n || n % q >= n / q) {
    throw std::invalid_argument("block plan needs n = q*s + r with 0 <= r < s (q=" +
                                std::to_string(q) + ", n=" + std::to_string(n) + ")");
  }
  BlockPlan plan{n, q, n / q, n % q, {}};
  plan.blocks.reserve(static_cast<std::size_t>(q + 1));
  for (std::int64_t b = 0; b < q; ++b) {
    plan.blocks.push_back({b * plan.s + 1, (b + 1) * plan.s});
  }
  if (plan.r > 0) plan.blocks.push_back({q * plan.s + 1, n});
  return plan;
}

std::int64_t q_of_f(double f) {
  if (!(f >= 1.0) || !std::isfinite(f)) {
    throw std::invalid_argument("f must be a finite real >= 1 (f < 1 gives zero blocks)");
  }
  auto q = static_cast<std::int64_t>(std::floor(f * std::cbrt(f)));
  // q = max integer with q^3 <= f^4; repair rounding at exact cubes.
  const long double f4 = static_cast<long double>(f) * f * f * f;
  const auto cube = [](std::int64_t v) { return static_cast<long double>(v) * v * v; };
  while (cube(q + 1) <= f4) ++q;
  while (q > 1 && cube(q) > f4) --q;
  return q;
}

}  // namespace apth
