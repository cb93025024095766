#include "apth/selftest.hpp"

#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "apth/coloring.hpp"
#include "apth/family.hpp"
#include "apth/io.hpp"
#include "apth/montecarlo.hpp"
#include "apth/probability.hpp"
#include "apth/progressions.hpp"

namespace apth {

namespace {

struct Check {
  std::string name;
  std::function<bool()> body;
};

bool counts_match_enumeration() {
  for (int k = 3; k <= 6; ++k) {
    for (std::int64_t n = 1; n <= 60; ++n) {
      if (count_aps(k, n) != enumerate_aps(k, n).size()) return false;
    }
  }
  return true;
}

bool lemma_family_properties() {
  for (int k = 3; k <= 6; ++k) {
    for (std::int64_t n = k * (k - 1); n <= 120; ++n) {
      const APFamily f = lemma_family(k, n);
      if (!is_almost_disjoint(f).almost_disjoint) return false;
      if (f.size() != lemma_family_size(k, n)) return false;
      bool inside = true;
      f.for_each([&](const Progression& p) {
        if (p.start() > p.diff()) inside = false;
        for (int l = 0; l < k; ++l) {
          // l*n/k < a + l*d <= (l+1)*n/k
          const std::int64_t x = p.at(l) * k;
          if (!(x > l * n && x <= (l + 1) * n)) inside = false;
        }
      });
      if (!inside) return false;
    }
  }
  return true;
}

bool greedy_is_almost_disjoint() {
  for (const auto order : {ScanOrder::kByDiffStart, ScanOrder::kByStartDiff}) {
    for (const bool seed : {false, true}) {
      if (!is_almost_disjoint(greedy_max_family(3, 60, seed, order)).almost_disjoint) return false;
      if (!is_almost_disjoint(greedy_max_family(4, 60, seed, order)).almost_disjoint) return false;
    }
  }
  return true;
}

bool kernel_matches_direct_scan() {
  for (const int k : {3, 4}) {
    for (std::int64_t n = 1; n <= 12; ++n) {
      const auto aps = enumerate_aps(k, n);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const Coloring c = Coloring::from_words(n, {mask});
        std::uint64_t mono = 0;
        for (const auto& p : aps) {
          bool same = true;
          for (int l = 1; l < k; ++l) same = same && c.is_red(p.at(l)) == c.is_red(p.start());
          mono += same;
        }
        if (count_mono_aps(c, k) != mono || has_mono_ap(c, k) != (mono > 0)) return false;
        if (count_mono_aps(c.complement(), k) != mono) return false;
      }
    }
  }
  return true;
}

bool expectation_identity() {
  for (const int k : {3, 4}) {
    for (std::int64_t n = 1; n <= 12; ++n) {
      const ExactDistribution d = mono_count_distribution(k, n);
      const Rational expected = Rational(count_aps(k, n).convert_to<BigCount>()) /
                                Rational(BigCount(1) << static_cast<unsigned>(k - 1));
      if (d.expectation() != expected) return false;
      if (Rational(1) - d.probability(0) != exact_prob_mono(k, n)) return false;
    }
  }
  return true;
}

bool estimates_ignore_worker_count() {
  return estimate_prob(3, 7, 2000, 5, 1) == estimate_prob(3, 7, 2000, 5, 3);
}

bool round_trips() {
  const APFamily fam = greedy_max_family(3, 30, true);
  if (io::family_from_csv(io::family_to_csv(fam), 30) != APFamily::from_members(3, 30, fam.members())) {
    return false;
  }
  if (io::family_from_json(io::json::parse(io::family_to_json(fam).dump()), 3, 30).members() !=
      fam.members()) {
    return false;
  }
  const ExactDistribution dist = mono_count_distribution(3, 8);
  const auto same_dist = [&](const ExactDistribution& d) {
    return d.k == dist.k && d.n == dist.n && d.total == dist.total && d.counts == dist.counts;
  };
  if (!same_dist(io::distribution_from_csv(io::distribution_to_csv(dist), 3))) return false;
  if (!same_dist(io::distribution_from_json(io::json::parse(io::distribution_to_json(dist).dump())))) {
    return false;
  }
  const ProbEstimate e = estimate_prob(4, 15, 500, 9);
  if (io::estimate_from_json(io::json::parse(io::estimate_to_json(e).dump())) != e) return false;
  const ThresholdResult t = threshold_search(3, 0.5, 2000, 11);
  if (io::threshold_from_json(io::json::parse(io::threshold_to_json(t).dump())) != t) return false;
  const ScalingReport s = scaling_report(3, 5, 0.5, 500, 13);
  const ScalingReport back = io::scaling_from_csv(io::scaling_to_csv(s));
  if (back.rows != s.rows || back.slope != s.slope || back.seed != s.seed) return false;
  RandomStream stream(1, 2);
  const Coloring c = random_coloring(130, stream);
  if (io::coloring_from_json(io::json::parse(io::coloring_to_json(c).dump())) != c) return false;
  if (Coloring::from_string(c.to_string()) != c) return false;
  const Count big = count_aps(3, kMaxN);
  return io::count_from_json(io::json::parse(io::count_to_json(big).dump())) == big;
}

}  // namespace

bool run_selftest(std::ostream& log) {
  const std::vector<Check> checks = {
      {"progressions: closed-form count equals enumeration", counts_match_enumeration},
      {"family: large-difference family invariants", lemma_family_properties},
      {"family: greedy output is almost disjoint", greedy_is_almost_disjoint},
      {"coloring: shifted-AND kernel equals direct scan", kernel_matches_direct_scan},
      {"probability: expectation identity", expectation_identity},
      {"montecarlo: worker-count independence", estimates_ignore_worker_count},
      {"io: CSV/JSON round trips", round_trips},
  };
  bool all = true;
  for (const auto& check : checks) {
    bool ok = false;
    try {
      ok = check.body();
    } catch (const std::exception& e) {
      log << "FAIL " << check.name << " (" << e.what() << ")\n";
      all = false;
      continue;
    }
    log << (ok ? "ok   " : "FAIL ") << check.name << '\n';
    all = all && ok;
  }
  return all;
}

}  // namespace apth
