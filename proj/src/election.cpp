#include "rangectl/election.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "rangectl/errors.hpp"

namespace rangectl {

std::string_view to_string(VotingSystem system) {
  return system == VotingSystem::Range ? "rv" : "nrv";
}

VotingSystem parse_voting_system(std::string_view text) {
  if (text == "rv" || text == "RV") return VotingSystem::Range;
  if (text == "nrv" || text == "NRV") return VotingSystem::Normalized;
  throw ValidationError("unknown voting system '" + std::string(text) + "' (expected rv or nrv)");
}

bool is_valid_candidate_id(std::string_view id) {
  if (id.empty()) return false;
  return std::none_of(id.begin(), id.end(), [](unsigned char ch) { return std::isspace(ch) != 0; });
}

std::vector<BallotGroup> canonical_ballots(std::vector<BallotGroup> ballots) {
  std::map<std::vector<int>, std::int64_t> merged;
  for (auto& group : ballots) merged[std::move(group.scores)] += group.multiplicity;
  std::vector<BallotGroup> out;
  out.reserve(merged.size());
  for (auto& [scores, count] : merged) out.push_back({scores, count});
  return out;
}

Election::Election(int range, std::vector<std::string> candidates, std::vector<BallotGroup> ballots)
    : range_(range), candidates_(std::move(candidates)) {
  if (range_ < 1) throw ValidationError("score range must be >= 1");
  std::set<std::string_view> seen;
  for (const auto& id : candidates_) {
    if (!is_valid_candidate_id(id)) throw ValidationError("invalid candidate id '" + id + "'");
    if (!seen.insert(id).second) throw ValidationError("duplicate candidate '" + id + "'");
  }
  for (const auto& group : ballots) {
    if (group.scores.size() != candidates_.size()) {
      throw ValidationError("ballot has " + std::to_string(group.scores.size()) + " scores, expected " +
                            std::to_string(candidates_.size()));
    }
    if (group.multiplicity < 1) throw ValidationError("ballot multiplicity must be >= 1");
    for (int s : group.scores) {
      if (s < 0 || s > range_) {
        throw ValidationError("score " + std::to_string(s) + " outside [0, " + std::to_string(range_) + "]");
      }
    }
  }
  ballots_ = canonical_ballots(std::move(ballots));
}

std::int64_t Election::voter_count() const {
  std::int64_t total = 0;
  for (const auto& group : ballots_) total += group.multiplicity;
  return total;
}

std::optional<std::size_t> Election::index_of(std::string_view candidate) const {
  auto it = std::find(candidates_.begin(), candidates_.end(), candidate);
  if (it == candidates_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - candidates_.begin());
}

std::size_t Election::require_index(std::string_view candidate) const {
  if (auto idx = index_of(candidate)) return *idx;
  throw ValidationError("unknown candidate '" + std::string(candidate) + "'");
}

const Rational& Tally::total(std::string_view candidate) const {
  auto it = std::find(candidates.begin(), candidates.end(), candidate);
  if (it == candidates.end()) throw ValidationError("unknown candidate '" + std::string(candidate) + "'");
  return totals[static_cast<std::size_t>(it - candidates.begin())];
}

namespace {

template <class T>
std::optional<std::vector<Rational>> normalize_impl(std::span<const T> scores, int range) {
  if (scores.empty()) return std::nullopt;
  auto [lo_it, hi_it] = std::minmax_element(scores.begin(), scores.end());
  Rational lo(*lo_it);
  Rational hi(*hi_it);
  if (lo == hi) return std::nullopt;
  Rational spread = hi - lo;
  std::vector<Rational> out;
  out.reserve(scores.size());
  for (const auto& s : scores) out.push_back(Rational(range) * (Rational(s) - lo) / spread);
  return out;
}

}  // namespace

std::optional<std::vector<Rational>> normalize_ballot(std::span<const int> scores, int range) {
  return normalize_impl(scores, range);
}

std::optional<std::vector<Rational>> normalize_ballot(std::span<const Rational> scores, int range) {
  return normalize_impl(scores, range);
}

Tally tally(const Election& election, VotingSystem system) {
  Tally out;
  out.candidates = election.candidates();
  out.totals.assign(election.candidate_count(), Rational(0));
  for (const auto& group : election.ballots()) {
    Rational weight(group.multiplicity);
    if (system == VotingSystem::Range) {
      for (std::size_t i = 0; i < group.scores.size(); ++i) out.totals[i] += weight * Rational(group.scores[i]);
      continue;
    }
    auto normalized = normalize_ballot(std::span<const int>(group.scores), election.range());
    if (!normalized) continue;
    for (std::size_t i = 0; i < normalized->size(); ++i) out.totals[i] += weight * (*normalized)[i];
  }
  if (out.totals.empty()) return out;
  Rational best = *std::max_element(out.totals.begin(), out.totals.end());
  for (std::size_t i = 0; i < out.totals.size(); ++i) {
    if (out.totals[i] == best) out.winners.push_back(out.candidates[i]);
  }
  if (out.winners.size() == 1) out.unique_winner = out.winners.front();
  return out;
}

Election project(const Election& election, const std::vector<std::string>& subset) {
  std::vector<bool> keep(election.candidate_count(), false);
  for (const auto& id : subset) keep[election.require_index(id)] = true;
  std::vector<std::string> candidates;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i]) candidates.push_back(election.candidates()[i]);
  }
  std::vector<BallotGroup> ballots;
  ballots.reserve(election.ballots().size());
  for (const auto& group : election.ballots()) {
    BallotGroup g{{}, group.multiplicity};
    for (std::size_t i = 0; i < keep.size(); ++i) {
      if (keep[i]) g.scores.push_back(group.scores[i]);
    }
    ballots.push_back(std::move(g));
  }
  return Election(election.range(), std::move(candidates), std::move(ballots));
}

Election scale_election(const Election& election, int factor) {
  if (factor < 1) throw ValidationError("scale factor must be >= 1");
  std::vector<BallotGroup> ballots = election.ballots();
  for (auto& group : ballots) {
    for (int& s : group.scores) s *= factor;
  }
  return Election(election.range() * factor, election.candidates(), std::move(ballots));
}

Election from_approval(std::vector<std::string> candidates, std::vector<BallotGroup> ballots) {
  for (const auto& group : ballots) {
    for (int s : group.scores) {
      if (s != 0 && s != 1) throw ValidationError("approval ballot score must be 0 or 1, got " + std::to_string(s));
    }
  }
  return Election(1, std::move(candidates), std::move(ballots));
}

std::vector<std::int64_t> approval_counts(const Election& election) {
  std::vector<std::int64_t> counts(election.candidate_count(), 0);
  for (const auto& group : election.ballots()) {
    for (std::size_t i = 0; i < group.scores.size(); ++i) {
      if (group.scores[i] > 0) counts[i] += group.multiplicity;
    }
  }
  return counts;
}

}  // namespace rangectl
