#include "apth/coloring.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace apth {

namespace {

inline std::uint64_t low_mask(std::int64_t bits) noexcept {
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

/// 64 bits of `words` starting at bit `pos`; zero past the end.
inline std::uint64_t window(std::span<const std::uint64_t> words, std::uint64_t pos) noexcept {
  const std::size_t w = pos >> 6;
  const unsigned off = pos & 63;
  const std::uint64_t lo = w < words.size() ? words[w] : 0;
  if (off == 0) return lo;
  const std::uint64_t hi = w + 1 < words.size() ? words[w + 1] : 0;
  return (lo >> off) | (hi << (64 - off));
}

/// Mono k-APs with difference d: bit i of the AND of the red mask shifted by
/// 0, d, ..., (k-1)d is set iff {i+1, i+1+d, ...} is all red, and likewise
/// for the complement. Only starts i < n - (k-1)d are valid.
template <bool kStopAtFirst>
std::uint64_t mono_for_diff(std::span<const std::uint64_t> red, std::int64_t n, int k,
                            std::int64_t d) noexcept {
  const std::int64_t valid = n - (k - 1) * d;
  std::uint64_t hits = 0;
  if (n <= 64) {
    const std::uint64_t x = red[0];
    std::uint64_t r = x;
    std::uint64_t b = ~x;
    for (int j = 1; j < k; ++j) {
      const std::uint64_t shifted = x >> (j * d);
      r &= shifted;
      b &= ~shifted;
    }
    const std::uint64_t both = (r | b) & low_mask(valid);
    if constexpr (kStopAtFirst) return both != 0;
    return static_cast<std::uint64_t>(std::popcount(r & low_mask(valid)) +
                                      std::popcount(b & low_mask(valid)));
  }
  const auto word_span = static_cast<std::size_t>((valid + 63) / 64);
  for (std::size_t w = 0; w < word_span; ++w) {
    const std::uint64_t base = w * 64;
    std::uint64_t r = ~std::uint64_t{0};
    std::uint64_t b = ~std::uint64_t{0};
    for (int j = 0; j < k && (r | b); ++j) {
      const std::uint64_t x = window(red, base + static_cast<std::uint64_t>(j * d));
      r &= x;
      b &= ~x;
    }
    const std::uint64_t mask = low_mask(valid - static_cast<std::int64_t>(base));
    r &= mask;
    b &= mask;
    if constexpr (kStopAtFirst) {
      if (r | b) return 1;
    } else {
      hits += static_cast<std::uint64_t>(std::popcount(r) + std::popcount(b));
    }
  }
  return hits;
}

}  // namespace

Coloring::Coloring(std::int64_t n) : n_(n) {
  require_valid_n(n);
  words_.assign(word_count(n), 0);
}

Coloring Coloring::from_words(std::int64_t n, std::vector<std::uint64_t> words) {
  Coloring c(n);
  if (words.size() != c.words_.size()) {
    throw std::invalid_argument("coloring of n=" + std::to_string(n) + " needs " +
                                std::to_string(c.words_.size()) + " words, got " +
                                std::to_string(words.size()));
  }
  const std::int64_t tail = n - 64 * static_cast<std::int64_t>(words.size() - 1);
  if (words.back() & ~low_mask(tail)) {
    throw std::invalid_argument("coloring padding bits beyond n must be zero");
  }
  c.words_ = std::move(words);
  return c;
}

Coloring Coloring::from_string(std::string_view bits) {
  Coloring c(static_cast<std::int64_t>(bits.size()));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const char ch = bits[i];
    if (ch == '1' || ch == 'R' || ch == 'r') {
      c.words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    } else if (ch != '0' && ch != 'B' && ch != 'b') {
      throw std::invalid_argument(std::string("invalid coloring character '") + ch + "'");
    }
  }
  return c;
}

Coloring Coloring::from_red_elements(std::int64_t n, std::span<const std::int64_t> red) {
  Coloring c(n);
  for (const std::int64_t e : red) {
    if (e < 1 || e > n) {
      throw std::invalid_argument("element " + std::to_string(e) + " outside [1, " +
                                  std::to_string(n) + "]");
    }
    const auto bit = static_cast<std::uint64_t>(e - 1);
    c.words_[bit >> 6] |= std::uint64_t{1} << (bit & 63);
  }
  return c;
}

Coloring Coloring::all_red(std::int64_t n) {
  Coloring c(n);
  for (auto& w : c.words_) w = ~std::uint64_t{0};
  c.words_.back() &= low_mask(n - 64 * static_cast<std::int64_t>(c.words_.size() - 1));
  return c;
}

std::int64_t Coloring::red_count() const noexcept {
  std::int64_t total = 0;
  for (const auto w : words_) total += std::popcount(w);
  return total;
}

Coloring Coloring::complement() const {
  Coloring c = *this;
  for (auto& w : c.words_) w = ~w;
  c.words_.back() &= low_mask(n_ - 64 * static_cast<std::int64_t>(c.words_.size() - 1));
  return c;
}

std::string Coloring::to_string() const {
  std::string out(static_cast<std::size_t>(n_), '0');
  for (std::int64_t e = 1; e <= n_; ++e) {
    if (is_red(e)) out[static_cast<std::size_t>(e - 1)] = '1';
  }
  return out;
}

Coloring random_coloring(std::int64_t n, RandomStream& stream) {
  std::vector<std::uint64_t> words(Coloring::word_count(n));
  for (auto& w : words) w = stream.next_u64();
  words.back() &= low_mask(n - 64 * static_cast<std::int64_t>(words.size() - 1));
  return Coloring::from_words(n, std::move(words));
}

namespace detail {

bool has_mono_ap_words(std::span<const std::uint64_t> red, std::int64_t n, int k) noexcept {
  if (n < k) return false;
  const std::int64_t d_max = (n - 1) / (k - 1);
  for (std::int64_t d = 1; d <= d_max; ++d) {
    if (mono_for_diff<true>(red, n, k, d)) return true;
  }
  return false;
}

std::uint64_t count_mono_aps_words(std::span<const std::uint64_t> red, std::int64_t n,
                                   int k) noexcept {
  if (n < k) return 0;
  const std::int64_t d_max = (n - 1) / (k - 1);
  std::uint64_t total = 0;
  for (std::int64_t d = 1; d <= d_max; ++d) total += mono_for_diff<false>(red, n, k, d);
  return total;
}

}  // namespace detail

bool has_mono_ap(const Coloring& c, int k) {
  require_valid_k(k);
  return detail::has_mono_ap_words(c.words(), c.n(), k);
}

Count count_mono_aps(const Coloring& c, int k) {
  require_valid_k(k);
  if (c.n() < k) return 0;
  const std::int64_t d_max = (c.n() - 1) / (k - 1);
  Count total = 0;
  for (std::int64_t d = 1; d <= d_max; ++d) total += mono_for_diff<false>(c.words(), c.n(), k, d);
  return total;
}

bool mono_in_family(const Coloring& c, const APFamily& family) {
  if (family.n() > c.n()) {
    throw std::invalid_argument("family interval exceeds the coloring");
  }
  bool found = false;
  family.for_each([&](const Progression& p) {
    const bool first = c.is_red(p.start());
    for (int l = 1; l < p.length(); ++l) {
      if (c.is_red(p.at(l)) != first) return true;
    }
    found = true;
    return false;
  });
  return found;
}

}  // namespace apth
