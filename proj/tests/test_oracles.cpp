#include <doctest.h>

#include <random>
#include <vector>

#include "rangectl/errors.hpp"
#include "rangectl/oracles.hpp"
#include "rangectl/problems.hpp"

using namespace rangectl;

namespace {

HittingSetInstance hs(std::size_t n, std::vector<std::vector<std::size_t>> sets, std::int64_t k) {
  HittingSetInstance h;
  h.elements = default_elements(n);
  h.sets = std::move(sets);
  h.k = k;
  return h;
}

X3CInstance x3c(std::size_t n, std::vector<std::vector<std::size_t>> sets) {
  X3CInstance x;
  x.elements = default_elements(n);
  x.sets = std::move(sets);
  return x;
}

// Plain enumeration of all subsets; returns the minimum size and the
// lexicographically first minimum hitting set.
std::pair<std::size_t, std::vector<std::size_t>> brute_minimum(const HittingSetInstance& h) {
  std::size_t best = h.n() + 1;
  std::vector<std::size_t> best_set;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << h.n()); ++mask) {
    bool hits = true;
    for (const auto& s : h.sets) {
      bool any = false;
      for (auto e : s) any = any || ((mask >> e) & 1U);
      hits = hits && any;
    }
    if (!hits) continue;
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < h.n(); ++i) {
      if ((mask >> i) & 1U) chosen.push_back(i);
    }
    if (chosen.size() < best || (chosen.size() == best && chosen < best_set)) {
      best = chosen.size();
      best_set = chosen;
    }
  }
  return {best, best_set};
}

bool brute_x3c(const X3CInstance& x) {
  const auto m = x.sets.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<int> hit(x.elements.size(), 0);
    for (std::size_t i = 0; i < m; ++i) {
      if ((mask >> i) & 1U) {
        for (auto e : x.sets[i]) ++hit[e];
      }
    }
    bool exact = true;
    for (int h : hit) exact = exact && h == 1;
    if (exact) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("hitting set: examples") {
  CHECK_FALSE(solve_hitting_set(hs(2, {{0}, {1}}, 1)).yes);
  CHECK(solve_hitting_set(hs(2, {{0}, {1}}, 1)).minimum_size == 2);
  const auto a = solve_hitting_set(hs(2, {{0}, {0, 1}}, 1));
  CHECK(a.yes);
  CHECK(*a.witness == std::vector<std::size_t>{0});
  // k >= m is always yes
  const auto b = solve_hitting_set(hs(5, {{3}, {1, 4}, {0, 2}}, 3));
  CHECK(b.yes);
  CHECK(is_hitting_set(hs(5, {{3}, {1, 4}, {0, 2}}, 3), *b.witness));
}

TEST_CASE("hitting set: validation") {
  CHECK_THROWS_AS(hs(2, {}, 1).validate(), ValidationError);
  CHECK_THROWS_AS(hs(2, {{}}, 1).validate(), ValidationError);
  CHECK_THROWS_AS(hs(2, {{5}}, 1).validate(), ValidationError);
  CHECK_THROWS_AS(hs(2, {{0}}, 0).validate(), ValidationError);
  CHECK_THROWS_AS(hs(2, {{0}}, 3).validate(), ValidationError);
}

TEST_CASE("restricted hitting set") {
  CHECK(validate_restricted_hs(hs(6, {{0}}, 1)));
  CHECK_FALSE(validate_restricted_hs(hs(6, {{0}, {1}}, 1)));
}

TEST_CASE("hitting set: encode/decode") {
  const auto h = hs(2, {{0}, {0, 1}}, 1);
  CHECK(h.encode() == "n=2 m=2 k=1 S={b1}{b1,b2}");
  CHECK(HittingSetInstance::decode(h.encode()) == h);
  CHECK_THROWS(HittingSetInstance::decode("n=2 m=1 k=1 S={b3}"));
}

TEST_CASE("x3c: examples") {
  CHECK(solve_x3c(x3c(3, {{0, 1, 2}})).yes);
  const auto a = solve_x3c(x3c(6, {{0, 1, 2}, {2, 3, 4}, {3, 4, 5}}));
  CHECK(a.yes);
  CHECK(*a.witness == std::vector<std::size_t>{0, 2});
  CHECK_FALSE(solve_x3c(x3c(6, {{0, 1, 2}, {1, 2, 3}, {2, 3, 4}})).yes);
  CHECK(is_exact_cover(x3c(6, {{0, 1, 2}, {3, 4, 5}}), {0, 1}));
  CHECK_FALSE(is_exact_cover(x3c(6, {{0, 1, 2}, {2, 3, 4}}), {0, 1}));
}

TEST_CASE("x3c: validation and encoding") {
  CHECK_THROWS_AS(x3c(4, {{0, 1, 2}}).validate(), ValidationError);
  CHECK_THROWS_AS(x3c(3, {{0, 1}}).validate(), ValidationError);
  CHECK_THROWS_AS(x3c(6, {{0, 1, 2}}).validate(), ValidationError);
  CHECK_THROWS_AS(x3c(6, {{0, 1, 2}, {1, 2, 3}}).validate_covering(), ValidationError);
  const auto x = x3c(3, {{0, 1, 2}});
  CHECK(x.encode() == "k=1 s=1 S={b1,b2,b3}");
  CHECK(X3CInstance::decode(x.encode()) == x);
}

TEST_CASE("hitting set: branch and bound equals plain enumeration up to n=12") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 600; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const std::size_t m = 1 + rng() % 8;
    std::vector<std::vector<std::size_t>> sets;
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<std::size_t> s;
      while (s.empty()) {
        for (std::size_t e = 0; e < n; ++e) {
          if (rng() % 4 == 0) s.push_back(e);
        }
      }
      sets.push_back(s);
    }
    auto h = hs(n, sets, 1 + static_cast<std::int64_t>(rng() % n));
    const auto [min_size, first] = brute_minimum(h);
    const auto ans = solve_hitting_set(h);
    INFO(h.encode());
    REQUIRE(ans.minimum_size == min_size);
    REQUIRE(ans.yes == (static_cast<std::int64_t>(min_size) <= h.k));
    if (ans.yes) {
      REQUIRE(*ans.witness == first);
      REQUIRE(is_hitting_set(h, *ans.witness));
      // monotone in k
      for (auto k = h.k; k <= static_cast<std::int64_t>(n); ++k) {
        auto bigger = h;
        bigger.k = k;
        REQUIRE(solve_hitting_set(bigger).yes);
      }
    }
  }
}

TEST_CASE("x3c: search equals plain enumeration") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t k = 1 + rng() % 3;
    const std::size_t n = 3 * k;
    const std::size_t count = k + rng() % 6;
    std::vector<std::vector<std::size_t>> sets;
    for (std::size_t j = 0; j < count; ++j) {
      std::vector<std::size_t> s;
      while (s.size() < 3) {
        const auto e = rng() % n;
        if (std::find(s.begin(), s.end(), e) == s.end()) s.push_back(e);
      }
      std::sort(s.begin(), s.end());
      sets.push_back(s);
    }
    const auto x = x3c(n, sets);
    const auto ans = solve_x3c(x);
    INFO(x.encode());
    REQUIRE(ans.yes == brute_x3c(x));
    if (ans.yes) REQUIRE(is_exact_cover(x, *ans.witness));
  }
}
