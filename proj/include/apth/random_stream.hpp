#pragma once

#include <array>
#include <cstdint>

namespace apth {

/// Philox4x32-10 block: 128 output bits for a 128-bit counter and 64-bit key.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based stream of 64-bit words. Word w of stream (seed, stream_id)
/// is a pure function of (seed, stream_id, w): the key is the seed, the
/// counter is (w / 2, stream_id). Distinct stream ids never share a counter.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
      : seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  /// Number of words drawn so far.
  std::uint64_t position() const noexcept { return position_; }

  /// Random access; does not move the stream.
  std::uint64_t word_at(std::uint64_t index) const noexcept;
  std::uint64_t next_u64() noexcept { return word_at(position_++); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t position_ = 0;
};

}  // namespace apth
