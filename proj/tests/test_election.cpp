#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "rangectl/election.hpp"
#include "rangectl/errors.hpp"
#include "support.hpp"

using namespace rangectl;

namespace {

// k=2; 5x(a=2,b=0,c=1), 6x(0,2,0), 4x(1,2,0)
Election first_table() { return Election(2, {"a", "b", "c"}, {{{2, 0, 1}, 5}, {{0, 2, 0}, 6}, {{1, 2, 0}, 4}}); }

// k=2; 7x(a=2,0,0), 4x(0,2,0), 4x(0,1,2)
Election shift_table() { return Election(2, {"a", "b", "c"}, {{{2, 0, 0}, 7}, {{0, 2, 0}, 4}, {{0, 1, 2}, 4}}); }

std::vector<Rational> totals(const Tally& t) { return t.totals; }

}  // namespace

TEST_CASE("election: canonical form merges and sorts groups") {
  Election e(2, {"a", "b"}, {{{2, 0}, 1}, {{0, 2}, 3}, {{2, 0}, 4}});
  REQUIRE(e.ballots().size() == 2);
  CHECK(e.ballots()[0] == BallotGroup{{0, 2}, 3});
  CHECK(e.ballots()[1] == BallotGroup{{2, 0}, 5});
  CHECK(e.voter_count() == 8);
}

TEST_CASE("election: validation") {
  CHECK_THROWS_AS(Election(0, {"a"}, {}), ValidationError);
  CHECK_THROWS_AS(Election(2, {"a", "a"}, {}), ValidationError);
  CHECK_THROWS_AS(Election(2, {"a b"}, {}), ValidationError);
  CHECK_THROWS_AS(Election(2, {"a"}, {{{3}, 1}}), ValidationError);
  CHECK_THROWS_AS(Election(2, {"a"}, {{{-1}, 1}}), ValidationError);
  CHECK_THROWS_AS(Election(2, {"a", "b"}, {{{1}, 1}}), ValidationError);
  CHECK_THROWS_AS(Election(2, {"a"}, {{{1}, 0}}), ValidationError);
  CHECK(is_valid_candidate_id("b1"));
  CHECK_FALSE(is_valid_candidate_id(""));
  CHECK_FALSE(is_valid_candidate_id("x\ty"));
}

TEST_CASE("tally: RV on the first table follows the arithmetic") {
  const auto t = tally(first_table(), VotingSystem::Range);
  CHECK(t.total("a") == Rational(14));
  CHECK(t.total("b") == Rational(20));
  CHECK(t.total("c") == Rational(5));
  CHECK(t.winners == std::vector<std::string>{"b"});
  CHECK(t.unique_winner == std::optional<std::string>("b"));
}

TEST_CASE("tally: NRV on the winner-shift table") {
  const auto t = tally(shift_table(), VotingSystem::Normalized);
  CHECK(totals(t) == std::vector<Rational>{14, 12, 8});
  CHECK(t.unique_winner == std::optional<std::string>("a"));
}

TEST_CASE("tally: single candidate is the unique winner") {
  Election e(3, {"x"}, {{{1}, 2}, {{3}, 1}});
  for (auto sys : {VotingSystem::Range, VotingSystem::Normalized}) {
    const auto t = tally(e, sys);
    CHECK(t.unique_winner == std::optional<std::string>("x"));
  }
}

TEST_CASE("tally: empty and zero-voter elections") {
  const auto empty = tally(Election(2, {}, {}), VotingSystem::Normalized);
  CHECK(empty.winners.empty());
  CHECK_FALSE(empty.unique_winner);
  const auto none = tally(Election(2, {"a", "b"}, {}), VotingSystem::Range);
  CHECK(none.winners == std::vector<std::string>{"a", "b"});
  CHECK_FALSE(none.unique_winner);
}

TEST_CASE("tally: unknown candidate lookup throws") {
  const auto t = tally(first_table(), VotingSystem::Range);
  CHECK_THROWS_AS(t.total("zz"), ValidationError);
}

TEST_CASE("normalize_ballot: examples") {
  const std::vector<int> a{0, 1};
  CHECK(*normalize_ballot(a, 2) == std::vector<Rational>{0, 2});
  const std::vector<int> flat{1, 1, 1};
  CHECK_FALSE(normalize_ballot(flat, 5).has_value());
  const std::vector<int> full{0, 1, 2};
  CHECK(*normalize_ballot(full, 2) == std::vector<Rational>{0, 1, 2});
  const std::vector<int> c{1, 2};
  CHECK(*normalize_ballot(c, 2) == std::vector<Rational>{0, 2});
  const std::vector<int> d{1, 2, 4};
  CHECK(*normalize_ballot(d, 4) == std::vector<Rational>{0, Rational(4, 3), 4});
  const std::vector<int> single{3};
  CHECK_FALSE(normalize_ballot(single, 4).has_value());
}

TEST_CASE("project: removing c makes b the winner") {
  const auto p = project(shift_table(), {"a", "b"});
  const auto t = tally(p, VotingSystem::Normalized);
  CHECK(totals(t) == std::vector<Rational>{14, 16});
  CHECK(t.unique_winner == std::optional<std::string>("b"));
  // raw scores are retained
  CHECK(p.ballots().back().scores == std::vector<int>{2, 0});
}

TEST_CASE("project: identity and empty") {
  CHECK(project(shift_table(), {"a", "b", "c"}) == shift_table());
  CHECK(project(shift_table(), {"c", "a", "b"}) == shift_table());
  const auto empty = project(shift_table(), {});
  CHECK(empty.candidate_count() == 0);
  CHECK(tally(empty, VotingSystem::Normalized).winners.empty());
  CHECK_THROWS_AS(project(shift_table(), {"a", "q"}), ValidationError);
}

TEST_CASE("scale_election: examples") {
  CHECK(scale_election(first_table(), 1) == first_table());
  const auto s = scale_election(first_table(), 3);
  CHECK(s.range() == 6);
  CHECK(totals(tally(s, VotingSystem::Range)) == std::vector<Rational>{42, 60, 15});
  CHECK(tally(scale_election(shift_table(), 2), VotingSystem::Normalized).winners == std::vector<std::string>{"a"});
  CHECK_THROWS_AS(scale_election(first_table(), 0), ValidationError);
}

TEST_CASE("from_approval: IIA table") {
  const auto e = from_approval({"a", "b", "c"}, {{{1, 0, 0}, 5}, {{0, 1, 0}, 4}, {{0, 0, 1}, 2}});
  CHECK(e.range() == 1);
  const auto t = tally(e, VotingSystem::Range);
  CHECK(totals(t) == std::vector<Rational>{5, 4, 2});
  CHECK(t.unique_winner == std::optional<std::string>("a"));
  CHECK(approval_counts(e) == std::vector<std::int64_t>{5, 4, 2});
  const auto without_c = tally(project(e, {"a", "b"}), VotingSystem::Range);
  CHECK(without_c.unique_winner == std::optional<std::string>("a"));
  CHECK_THROWS_AS(from_approval({"a"}, {{{2}, 1}}), ValidationError);
}

TEST_CASE("from_approval: all-approving ballot and empty voter set") {
  const auto e = from_approval({"a", "b", "c"}, {{{1, 1, 1}, 1}});
  CHECK(tally(e, VotingSystem::Normalized).winners.size() == 3);
  CHECK(tally(e, VotingSystem::Range).winners.size() == 3);
  const auto z = from_approval({"a", "b"}, {});
  CHECK(totals(tally(z, VotingSystem::Range)) == std::vector<Rational>{0, 0});
  CHECK(tally(z, VotingSystem::Range).winners.size() == 2);
}

TEST_CASE("tally agrees with the expanded-voter oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 400; ++trial) {
    const int range = 1 + static_cast<int>(rng() % 5);
    const auto e = oracle::random_election(rng, 5, 6, range);
    std::vector<std::size_t> all(e.candidate_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto voters = oracle::expand(e.ballots());
    for (auto sys : {VotingSystem::Range, VotingSystem::Normalized}) {
      const bool nrv = sys == VotingSystem::Normalized;
      const auto t = tally(e, sys);
      const auto expect = oracle::totals(voters, all, range, nrv);
      for (std::size_t i = 0; i < all.size(); ++i) {
        REQUIRE(t.totals[i].num() == expect[i].p);
        REQUIRE(t.totals[i].den() == expect[i].q);
      }
      std::vector<std::string> w;
      for (auto i : oracle::winners(voters, all, range, nrv)) w.push_back(e.candidates()[i]);
      REQUIRE(t.winners == w);
    }
  }
}
