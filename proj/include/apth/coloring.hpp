#pragma once

// Bit-packed 2-colorings of [1, n] and monochromatic k-AP detection.
//
// Element i is bit i-1; bit value 1 is red, 0 is blue. Padding bits past n
// are always zero.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apth/family.hpp"
#include "apth/progressions.hpp"
#include "apth/random_stream.hpp"

namespace apth {

class Coloring {
 public:
  /// All-blue coloring of [1, n].
  explicit Coloring(std::int64_t n);

  /// Throws std::invalid_argument on a word-count mismatch or set padding bits.
  static Coloring from_words(std::int64_t n, std::vector<std::uint64_t> words);
  /// '1' = red, '0' = blue, element 1 first. Also accepts 'R' / 'B'.
  static Coloring from_string(std::string_view bits);
  static Coloring from_red_elements(std::int64_t n, std::span<const std::int64_t> red);
  static Coloring all_red(std::int64_t n);

  std::int64_t n() const noexcept { return n_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  bool is_red(std::int64_t element) const noexcept {
    const auto bit = static_cast<std::uint64_t>(element - 1);
    return (words_[bit >> 6] >> (bit & 63)) & 1;
  }
  std::int64_t red_count() const noexcept;

  /// Swaps the two colors.
  Coloring complement() const;
  /// '0'/'1' string, element 1 first.
  std::string to_string() const;

  friend bool operator==(const Coloring&, const Coloring&) = default;

  static std::size_t word_count(std::int64_t n) noexcept {
    return static_cast<std::size_t>((n + 63) / 64);
  }

 private:
  std::int64_t n_;
  std::vector<std::uint64_t> words_;
};

/// Uniform coloring drawn from the next word_count(n) words of `stream`.
Coloring random_coloring(std::int64_t n, RandomStream& stream);

/// True iff some k-AP inside [1, n] is monochromatic. Scans d ascending and
/// exits on the first hit.
bool has_mono_ap(const Coloring& c, int k);

/// Number of monochromatic k-APs inside [1, n].
Count count_mono_aps(const Coloring& c, int k);

/// True iff some member of the family is monochromatic. Requires family.n() <= c.n().
bool mono_in_family(const Coloring& c, const APFamily& family);

namespace detail {

/// Word-level kernels over a raw red mask (n significant bits). Used by the
/// exhaustive enumerators to avoid building Coloring objects.
bool has_mono_ap_words(std::span<const std::uint64_t> red, std::int64_t n, int k) noexcept;
std::uint64_t count_mono_aps_words(std::span<const std::uint64_t> red, std::int64_t n,
                                   int k) noexcept;

}  // namespace detail

}  // namespace apth
