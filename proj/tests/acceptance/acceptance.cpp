// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "apth/coloring.hpp"
#include "apth/family.hpp"
#include "apth/io.hpp"
#include "apth/montecarlo.hpp"
#include "apth/probability.hpp"
#include "apth/progressions.hpp"

using namespace apth;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail.str("");
    if (!pass) detail << "; ";
    pass = false;
    detail << why;
  }
  void note(const std::string& what) {
    if (pass) detail << (detail.tellp() > 0 ? "; " : "") << what;
  }
};

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string str(double v) { return io::format_double(v); }

// 1. Almost-disjointness and interval placement of the large-difference family.
void lemma_correctness(Verdict& v) {
  std::uint64_t families = 0;
  for (int k = 3; k <= 8; ++k) {
    for (std::int64_t n = k * (k - 1); n <= 300; ++n) {
      const APFamily f = lemma_family(k, n);
      ++families;
      if (!is_almost_disjoint(f).almost_disjoint) {
        v.fail("not almost disjoint at k=" + std::to_string(k) + " n=" + std::to_string(n));
        return;
      }
      bool ok = true;
      f.for_each([&](const Progression& p) {
        if (p.start() > p.diff()) ok = false;
        for (int l = 0; l < k; ++l) {
          const std::int64_t x = p.at(l);
          if (!(x * k > l * n && x * k <= (l + 1) * n)) ok = false;
        }
      });
      if (!ok) {
        v.fail("member outside its interval at k=" + std::to_string(k) + " n=" + std::to_string(n));
        return;
      }
    }
  }
  v.note(std::to_string(families) + " families checked");
}

// 2. Size formula against enumeration, and the n^2 normalizations at n = 10^6.
void lemma_size(Verdict& v) {
  for (int k = 3; k <= 8; ++k) {
    for (std::int64_t n = k * (k - 1); n <= 300; ++n) {
      std::uint64_t direct = 0;
      for (const auto& p : enumerate_aps(k, n)) {
        direct += (k * p.diff() >= n && (k - 1) * p.diff() < n);
      }
      if (lemma_family_size(k, n) != direct) {
        v.fail("size mismatch at k=" + std::to_string(k) + " n=" + std::to_string(n));
        return;
      }
    }
  }
  const double n = 1e6;
  double worst = 0.0;
  for (int k = 3; k <= 10; ++k) {
    const double size = lemma_family_size(k, 1000000).convert_to<double>();
    const double ratio = size * 2.0 * k * k * (k - 1) / (n * n);
    const double cubic_ratio = size * 2.0 * k * k * k / (n * n);
    const double want = static_cast<double>(k) / (k - 1);
    if (!(ratio >= 0.999 && ratio <= 1.001)) v.fail("k=" + std::to_string(k) + " ratio " + str(ratio));
    if (!(cubic_ratio >= want * 0.999 && cubic_ratio <= want * 1.001)) {
      v.fail("k=" + std::to_string(k) + " k^3-normalized ratio " + str(cubic_ratio));
    }
    worst = std::max(worst, std::abs(ratio - 1.0));
  }
  v.note("max |ratio-1| = " + str(worst));
}

// 3. Density constant of the large-difference family and of the greedy family.
void ck_bound(Verdict& v) {
  double worst = 0.0;
  for (int k = 3; k <= 10; ++k) {
    const double ck = ck_estimate(lemma_family(k, 1000000));
    const double rel = std::abs(ck * k * k - 1.0);
    worst = std::max(worst, rel);
    if (rel > 0.01) v.fail("k=" + std::to_string(k) + " ck=" + str(ck));
  }
  const double greedy = ck_estimate(greedy_max_family(3, 1000, true));
  if (!(greedy > 1.0 / 9.0)) v.fail("greedy ck=" + str(greedy));
  v.note("max rel err " + str(worst) + ", greedy k=3 n=1000 ck=" + str(greedy));
}

// 4. Single and pair mono counts against enumeration of all colorings.
void pair_counts(Verdict& v) {
  std::uint64_t pairs = 0;
  for (const int k : {3, 4}) {
    for (std::int64_t s = k; s <= 16; ++s) {
      const auto aps = enumerate_aps(k, s);
      const std::size_t m = aps.size();
      std::vector<std::uint64_t> masks(m, 0);
      for (std::size_t i = 0; i < m; ++i) {
        for (const auto x : elements(aps[i])) masks[i] |= std::uint64_t{1} << (x - 1);
      }
      std::vector<std::uint64_t> single(m, 0);
      std::vector<std::uint64_t> both(m * m, 0);
      std::vector<std::size_t> mono;
      const std::uint64_t full = (std::uint64_t{1} << s) - 1;
      for (std::uint64_t c = 0; c <= full; ++c) {
        mono.clear();
        for (std::size_t i = 0; i < m; ++i) {
          if ((c & masks[i]) == masks[i] || (c & masks[i]) == 0) mono.push_back(i);
        }
        for (const auto i : mono) {
          ++single[i];
          for (const auto j : mono) ++both[i * m + j];
        }
      }
      const BigCount expected_single = mono_single_count(k, s);
      const BigCount disjoint_value = BigCount(1) << (s - 2 * k + 2 >= 0 ? s - 2 * k + 2 : 0);
      for (std::size_t i = 0; i < m; ++i) {
        if (single[i] != expected_single) {
          v.fail("single count at s=" + std::to_string(s));
          return;
        }
        for (std::size_t j = i; j < m; ++j) {
          ++pairs;
          const BigCount closed = mono_pair_count(aps[i], aps[j], s);
          if (closed != both[i * m + j]) {
            v.fail("pair count at k=" + std::to_string(k) + " s=" + std::to_string(s));
            return;
          }
          if (intersection_size(aps[i], aps[j]) <= 1 && 2 * k <= s + 2 && closed != disjoint_value) {
            v.fail("almost-disjoint pair not 2^(s-2k+2) at s=" + std::to_string(s));
            return;
          }
        }
      }
    }
  }
  v.note(std::to_string(pairs) + " pairs");
}

// 5. Second-order lower bound <= exact union <= union bound.
void bonferroni_sandwich(Verdict& v) {
  for (std::int64_t s = 12; s <= 20; ++s) {
    const APFamily f = lemma_family(3, s);
    const std::uint64_t m = f.size().convert_to<std::uint64_t>();
    const BigCount lower = bonferroni_lower(m, s, 3).value;
    const BigCount exact = union_mono_exact(f, s);
    const BigCount upper = BigCount(m) << (s - 2);
    if (!(lower <= exact && exact <= upper)) {
      v.fail("s=" + std::to_string(s) + ": " + lower.str() + " <= " + exact.str() + " <= " + upper.str());
    }
  }
  v.note("s in [12,20]");
}

// 6. Expectation identity and Markov bound, exact rationals.
void expectation_identity(Verdict& v) {
  for (const int k : {3, 4}) {
    for (std::int64_t n = 1; n <= 20; ++n) {
      const ExactDistribution d = mono_count_distribution(k, n);
      const Rational e(BigCount(count_aps(k, n).convert_to<std::uint64_t>()),
                       BigCount(1) << (k - 1));
      if (d.expectation() != e) v.fail("E mismatch at k=" + std::to_string(k) + " n=" + std::to_string(n));
      const Rational markov = e > 1 ? Rational(1) : e;
      if (exact_prob_mono(k, n) > markov) {
        v.fail("Markov violated at k=" + std::to_string(k) + " n=" + std::to_string(n));
      }
    }
  }
  v.note("k in {3,4}, n <= 20");
}

// 7. W(3) = 9.
void w3(Verdict& v) {
  const Rational p8 = exact_prob_mono(3, 8);
  const Rational p9 = exact_prob_mono(3, 9);
  if (!(p8 < 1)) v.fail("p(3,8) = 1");
  if (has_mono_ap(Coloring::from_string("RRBBRRBB"), 3)) v.fail("witness has a mono 3-AP");
  if (p9 != 1) v.fail("p(3,9) = " + p9.str());
  v.note("p(3,8) = " + p8.str() + ", p(3,9) = " + p9.str());
}

// 8. Exact probability is nondecreasing in n.
void monotonicity(Verdict& v) {
  for (const int k : {3, 4}) {
    Rational previous = 0;
    for (std::int64_t n = 1; n <= 20; ++n) {
      const Rational p = exact_prob_mono(k, n);
      if (p < previous) v.fail("drop at k=" + std::to_string(k) + " n=" + std::to_string(n));
      previous = p;
    }
  }
  v.note("k in {3,4}, n <= 20");
}

// 9. Monte Carlo against the exact oracle, and worker-count determinism.
void calibration(Verdict& v) {
  constexpr std::uint64_t kSamples = 100000;
  constexpr std::uint64_t kSeed = 20240601;
  double worst = 0.0;
  for (const int k : {3, 4}) {
    for (std::int64_t n = 1; n <= 20; ++n) {
      const ProbEstimate one = estimate_prob(k, n, kSamples, kSeed, 1);
      const ProbEstimate eight = estimate_prob(k, n, kSamples, kSeed, 8);
      if (io::estimate_to_json(one).dump() != io::estimate_to_json(eight).dump()) {
        v.fail("workers 1 vs 8 differ at k=" + std::to_string(k) + " n=" + std::to_string(n));
      }
      const double p = exact_prob_mono(k, n).convert_to<double>();
      const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(kSamples));
      const double gap = std::abs(one.p_hat - p);
      if (gap > 3.0 * se) {
        v.fail("k=" + std::to_string(k) + " n=" + std::to_string(n) + " |p_hat-p| = " + str(gap) +
               " > 3SE = " + str(3.0 * se));
      }
      if (se > 0) worst = std::max(worst, gap / se);
    }
  }
  v.note("max |p_hat-p|/SE = " + str(worst));
}

// 10. Lower-scale direction: expectation small, p_hat under it.
void lower_scale(Verdict& v) {
  for (const int k : {10, 14, 18}) {
    const double g = 0.3;
    const std::int64_t n = nminus(k, g);
    const double e = expected_mono(k, n);
    const double cap = k * g * g / (k - 2);
    const ProbEstimate est = estimate_prob(k, n, 10000, 1000 + k, workers());
    if (!(e <= cap)) v.fail("k=" + std::to_string(k) + " E=" + str(e) + " > " + str(cap));
    if (!(est.p_hat <= e + 3.0 * est.standard_error())) {
      v.fail("k=" + std::to_string(k) + " p_hat=" + str(est.p_hat) + " > E + 3SE");
    }
    v.note("k=" + std::to_string(k) + " n=" + std::to_string(n) + " E=" + str(e) +
           " p_hat=" + str(est.p_hat));
  }
}

// 11. Upper-scale direction: p_hat above one minus the block bound.
void upper_scale(Verdict& v) {
  for (const auto& [k, f] : std::vector<std::pair<int, double>>{{12, 2.0}, {14, 2.0}}) {
    const std::int64_t n = nplus(k, f);
    if (k == 12 && n != 5320) v.fail("nplus(12,2) = " + std::to_string(n));
    const BoundReport b = thm1_p0_upper(k, n, f);
    const ProbEstimate est = estimate_prob(k, n, 10000, 2000 + k, workers());
    const double floor_value = 1.0 - b.value - 3.0 * est.standard_error();
    if (!(est.p_hat >= floor_value)) {
      v.fail("k=" + std::to_string(k) + " p_hat=" + str(est.p_hat) + " < " + str(floor_value));
    }
    v.note("k=" + std::to_string(k) + " n=" + std::to_string(n) + " bound=" + str(b.value) +
           " p_hat=" + str(est.p_hat));
  }
}

// 12. Scaling exponent of the empirical threshold.
void scaling(Verdict& v) {
  ThresholdOptions options;
  options.workers = workers();
  const ScalingReport r = scaling_report(8, 16, 0.5, 2000, 777, options);
  std::ostringstream rows;
  for (const auto& row : r.rows) rows << (rows.tellp() > 0 ? "," : "") << row.n_star;
  if (!(r.slope >= 0.40 && r.slope <= 0.62)) v.fail("slope " + str(r.slope));
  if (!r.strictly_increasing) v.fail("n_star not strictly increasing: " + rows.str());
  v.note("slope " + str(r.slope) + ", n_star = " + rows.str());
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria = {
      {"large-difference family correctness", lemma_correctness},
      {"large-difference family size", lemma_size},
      {"density constant", ck_bound},
      {"single and pair mono counts", pair_counts},
      {"second-order sandwich", bonferroni_sandwich},
      {"expectation identity", expectation_identity},
      {"W(3) = 9", w3},
      {"monotonicity in n", monotonicity},
      {"Monte Carlo calibration", calibration},
      {"lower-scale direction", lower_scale},
      {"upper-scale direction", upper_scale},
      {"scaling exponent", scaling},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !v.pass;
    std::ostringstream t;
    t.precision(2);
    t << std::fixed << secs;
    std::cout << "criterion " << (i + 1) << " " << (v.pass ? "PASS" : "FAIL") << " ["
              << criteria[i].first << "] " << v.detail.str() << " (" << t.str() << "s)"
              << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
