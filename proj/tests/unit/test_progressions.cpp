#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "apth/progressions.hpp"
#include "doctest.h"

using namespace apth;

namespace {

// Independent of the closed form and of enumerate_aps: every (a, d) pair.
std::uint64_t brute_count(int k, std::int64_t n) {
  std::uint64_t total = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    for (std::int64_t a = 1; a <= n; ++a) {
      if (a + (k - 1) * d <= n) ++total;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("elements expands a, a+d, ..., a+(k-1)d") {
  CHECK(elements(Progression(1, 2, 3)) == std::vector<std::int64_t>{1, 3, 5});
  CHECK(elements(Progression(4, 4, 3)) == std::vector<std::int64_t>{4, 8, 12});
  CHECK(elements(Progression(2, 1, 4)) == std::vector<std::int64_t>{2, 3, 4, 5});
}

TEST_CASE("progression construction validates its invariants") {
  CHECK_THROWS_AS(Progression(0, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(Progression(1, 0, 3), std::invalid_argument);
  CHECK_THROWS_AS(Progression(1, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(Progression(1, std::int64_t{1} << 62, 4), std::invalid_argument);
  CHECK_NOTHROW(Progression(1, std::int64_t{1} << 40, 4));
}

TEST_CASE("contained_in checks the last element against n") {
  CHECK(contained_in(Progression(1, 2, 3), 5));
  CHECK_FALSE(contained_in(Progression(1, 2, 3), 4));
  CHECK(contained_in(Progression(4, 4, 3), 12));
}

TEST_CASE("count_aps examples") {
  CHECK(count_aps(3, 5) == 4);
  CHECK(count_aps(3, 3) == 1);
  CHECK(count_aps(4, 3) == 0);
  CHECK_THROWS_AS(count_aps(2, 10), std::invalid_argument);
  CHECK_THROWS_AS(count_aps(3, 0), std::invalid_argument);
}

TEST_CASE("count_aps agrees with brute force and with enumeration") {
  for (int k = 3; k <= 8; ++k) {
    for (std::int64_t n = 1; n <= 200; ++n) {
      const Count c = count_aps(k, n);
      REQUIRE(c == enumerate_aps(k, n).size());
      if (n <= 80) REQUIRE(c == brute_count(k, n));
    }
  }
}

TEST_CASE("count_aps is monotone in n") {
  for (int k = 3; k <= 8; ++k) {
    for (std::int64_t n = 1; n < 300; ++n) CHECK(count_aps(k, n + 1) >= count_aps(k, n));
  }
}

TEST_CASE("count_aps leading term n^2 / (2k-2)") {
  const std::int64_t n = 100000;
  for (int k = 3; k <= 10; ++k) {
    const double ratio = count_aps(k, n).convert_to<double>() * (2.0 * k - 2.0) /
                         (static_cast<double>(n) * static_cast<double>(n));
    CHECK(ratio >= 0.99);
    CHECK(ratio <= 1.01);
  }
}

TEST_CASE("count_aps does not overflow at the interval cap") {
  const Count c = count_aps(3, kMaxN);
  CHECK(c > Count(std::numeric_limits<std::uint64_t>::max()));
}

TEST_CASE("enumerate_aps orders by (diff, start)") {
  const auto all = enumerate_aps(3, 5);
  const std::vector<Progression> expected = {Progression(1, 1, 3), Progression(2, 1, 3),
                                             Progression(3, 1, 3), Progression(1, 2, 3)};
  CHECK(all == expected);

  const auto d2 = enumerate_aps(3, 5, DiffRange{2, 2});
  CHECK(d2 == std::vector<Progression>{Progression(1, 2, 3)});

  CHECK(enumerate_aps(3, 2).empty());
}

TEST_CASE("enumerate_aps rejects ranges outside [1, max_diff]") {
  CHECK_THROWS_AS(enumerate_aps(3, 5, DiffRange{0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_aps(3, 5, DiffRange{1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_aps(3, 5, DiffRange{2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_aps(3, 2, DiffRange{1, 1}), std::invalid_argument);
}

TEST_CASE("enumerate_aps visitor can stop early") {
  int seen = 0;
  enumerate_aps(3, 50, std::nullopt, [&](const Progression&) { return ++seen < 7; });
  CHECK(seen == 7);
}

TEST_CASE("intersection_size examples") {
  CHECK(intersection_size(Progression(1, 2, 3), Progression(2, 1, 3)) == 1);
  const Progression p(5, 3, 6);
  CHECK(intersection_size(p, p) == 6);
  CHECK(intersection_size(Progression(1, 1, 3), Progression(7, 1, 3)) == 0);
}

TEST_CASE("intersection_size matches a set oracle and is symmetric") {
  std::mt19937_64 rng(20241015);
  std::uniform_int_distribution<std::int64_t> start(1, 40);
  std::uniform_int_distribution<std::int64_t> diff(1, 12);
  std::uniform_int_distribution<int> len(3, 9);
  for (int trial = 0; trial < 5000; ++trial) {
    const Progression p(start(rng), diff(rng), len(rng));
    const Progression q(start(rng), diff(rng), len(rng));
    const auto ep = elements(p);
    const auto eq = elements(q);
    const std::set<std::int64_t> sp(ep.begin(), ep.end());
    const auto shared = std::count_if(eq.begin(), eq.end(), [&](auto x) { return sp.contains(x); });
    REQUIRE(intersection_size(p, q) == shared);
    REQUIRE(intersection_size(q, p) == intersection_size(p, q));
    REQUIRE(intersection_size(p, p) == p.length());
  }
}
