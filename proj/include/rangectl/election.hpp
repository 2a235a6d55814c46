#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rangectl/rational.hpp"

namespace rangectl {

enum class VotingSystem {
  Range,       ///< RV: plain score sums.
  Normalized,  ///< NRV: each ballot rescaled to span [0, k]; flat ballots are discarded.
};

std::string_view to_string(VotingSystem system);
VotingSystem parse_voting_system(std::string_view text);

/// `multiplicity` identical voters, each giving `scores[i]` points to the
/// i-th candidate of the owning election.
struct BallotGroup {
  std::vector<int> scores;
  std::int64_t multiplicity = 1;

  friend bool operator==(const BallotGroup&, const BallotGroup&) = default;
};

/// A k-range election. Construction validates every invariant and puts the
/// ballots in canonical form: identical score vectors are merged (their
/// multiplicities summed) and groups are sorted by score vector.
class Election {
 public:
  Election() = default;
  Election(int range, std::vector<std::string> candidates, std::vector<BallotGroup> ballots);

  int range() const { return range_; }
  const std::vector<std::string>& candidates() const { return candidates_; }
  const std::vector<BallotGroup>& ballots() const { return ballots_; }

  std::size_t candidate_count() const { return candidates_.size(); }
  std::int64_t voter_count() const;

  std::optional<std::size_t> index_of(std::string_view candidate) const;
  /// Like index_of but throws ValidationError naming the candidate.
  std::size_t require_index(std::string_view candidate) const;

  friend bool operator==(const Election&, const Election&) = default;

 private:
  int range_ = 1;
  std::vector<std::string> candidates_;
  std::vector<BallotGroup> ballots_;
};

/// Merges identical score vectors and sorts; drops nothing. Used by Election
/// and by anything else holding loose ballot lists (e.g. add-voter pools).
std::vector<BallotGroup> canonical_ballots(std::vector<BallotGroup> ballots);

/// Checks the token rules for a candidate id: nonempty, no whitespace.
bool is_valid_candidate_id(std::string_view id);

struct Tally {
  std::vector<std::string> candidates;
  std::vector<Rational> totals;          ///< aligned with `candidates`
  std::vector<std::string> winners;      ///< declaration order
  std::optional<std::string> unique_winner;

  const Rational& total(std::string_view candidate) const;
};

Tally tally(const Election& election, VotingSystem system);

/// Normalized image of one ballot, or nullopt when the ballot is flat
/// (max == min) and therefore not counted.
std::optional<std::vector<Rational>> normalize_ballot(std::span<const int> scores, int range);
std::optional<std::vector<Rational>> normalize_ballot(std::span<const Rational> scores, int range);

/// Restricts the election to `subset` (kept in the election's declaration
/// order). Raw integer scores are kept; NRV renormalizes at tally time.
Election project(const Election& election, const std::vector<std::string>& subset);

/// Multiplies the range and every score by `factor` (>= 1).
Election scale_election(const Election& election, int factor);

/// Builds a 1-range election from 0/1 ballots.
Election from_approval(std::vector<std::string> candidates, std::vector<BallotGroup> ballots);

/// Approval counts (sum of multiplicities of approving ballots) per candidate.
std::vector<std::int64_t> approval_counts(const Election& election);

}  // namespace rangectl
