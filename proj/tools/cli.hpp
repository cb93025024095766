#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "apth/family.hpp"

namespace apth::cli {

enum class Subcommand {
  kCount,
  kEnumerate,
  kFamily,
  kGreedy,
  kExact,
  kDist,
  kBounds,
  kSimulate,
  kSweep,
  kReport,
  kSelftest,
};

enum class Format { kCsv, kJson };

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kBruteCap = 3,
  kCeiling = 4,
};

struct RunConfig {
  Subcommand subcommand = Subcommand::kSelftest;
  std::optional<int> k;
  std::optional<std::int64_t> n;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  double target = 0.5;
  std::optional<double> f;
  std::optional<double> g;
  std::optional<Format> format;
  std::optional<std::string> out;
  std::optional<int> brute_cap;

  std::optional<std::int64_t> d_min;
  std::optional<std::int64_t> d_max;
  ScanOrder order = ScanOrder::kByDiffStart;
  bool seed_with_lemma = false;
  int k_low = 0;
  int k_high = 0;
  std::int64_t ceiling = std::int64_t{1} << 32;
};

/// Parses argv-style arguments (without the program name). On failure
/// writes `error: 2: <message>` to err and returns nullopt; `help` is set
/// when --help was requested and printed.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out,
                                    std::ostream& err, bool& help);

/// Dispatches a parsed config. `env_brute_cap` is the APTH_BRUTE_CAP value,
/// if set; --brute-cap wins over it.
int run(const RunConfig& config, std::ostream& out, std::ostream& err,
        std::optional<std::string> env_brute_cap = std::nullopt);

/// parse_args + run; reads APTH_BRUTE_CAP from the environment.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apth::cli
