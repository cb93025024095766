#pragma once

// CSV and JSON encodings of toolkit results, plus the matching readers.
// CSV has a header row and unquoted numeric fields. Doubles are written in
// shortest round-trip form so readers recover them exactly.

#include <string>
#include <string_view>

#include "json.hpp"

#include "apth/coloring.hpp"
#include "apth/family.hpp"
#include "apth/montecarlo.hpp"
#include "apth/probability.hpp"
#include "apth/progressions.hpp"

namespace apth::io {

inline constexpr std::string_view kVersion = "1.0.0";

using nlohmann::json;

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);
/// Count as a JSON number when it fits 64 bits, otherwise a decimal string.
json count_to_json(const Count& c);
Count count_from_json(const json& j);

json count_report(int k, std::int64_t n, const Count& count);

std::string progressions_to_csv(int k, const std::vector<Progression>& ps);

std::string family_to_csv(const APFamily& family);
/// [{"start": a, "diff": d}, ...]
json family_to_json(const APFamily& family);
APFamily family_from_csv(std::string_view csv, std::int64_t n);
APFamily family_from_json(const json& j, int k, std::int64_t n);

std::string distribution_to_csv(const ExactDistribution& dist);
json distribution_to_json(const ExactDistribution& dist);
/// n and total are recovered from the counts (they sum to 2^n).
ExactDistribution distribution_from_csv(std::string_view csv, int k);
ExactDistribution distribution_from_json(const json& j);

json estimate_to_json(const ProbEstimate& e);
ProbEstimate estimate_from_json(const json& j);

json threshold_to_json(const ThresholdResult& t);
ThresholdResult threshold_from_json(const json& j);

/// Rows, then a trailing single-line JSON object with the slope and run metadata.
std::string scaling_to_csv(const ScalingReport& report);
json scaling_to_json(const ScalingReport& report);
ScalingReport scaling_from_csv(std::string_view csv);

json bound_to_json(const BoundReport& report);

/// {"n": n, "words": ["<16 hex digits>", ...]}, word 0 holds elements 1..64.
json coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const json& j);

}  // namespace apth::io
