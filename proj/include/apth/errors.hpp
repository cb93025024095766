#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace apth {

/// Exact enumeration was asked for an interval larger than the configured cap.
class BruteCapExceeded : public std::runtime_error {
 public:
  BruteCapExceeded(std::int64_t n, int cap)
      : std::runtime_error("exact enumeration over [1," + std::to_string(n) +
                           "] exceeds brute-force cap " + std::to_string(cap) +
                           " (raise it with --brute-cap or APTH_BRUTE_CAP)"),
        n_(n),
        cap_(cap) {}

  std::int64_t n() const noexcept { return n_; }
  int cap() const noexcept { return cap_; }

 private:
  std::int64_t n_;
  int cap_;
};

/// Threshold bracketing ran past the configured ceiling on n.
class SearchCeilingExceeded : public std::runtime_error {
 public:
  SearchCeilingExceeded(int k, std::int64_t ceiling)
      : std::runtime_error("no bracket for k=" + std::to_string(k) +
                           " found below n ceiling " + std::to_string(ceiling)),
        ceiling_(ceiling) {}

  std::int64_t ceiling() const noexcept { return ceiling_; }

 private:
  std::int64_t ceiling_;
};

}  // namespace apth
