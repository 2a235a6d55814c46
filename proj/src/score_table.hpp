#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rangectl/control.hpp"
#include "rangectl/election.hpp"

namespace rangectl::detail {

using CandidateMask = std::uint64_t;

inline CandidateMask bit(std::size_t i) { return CandidateMask{1} << i; }

/// Flattened ballot matrix for the solvers' hot loop. Totals are exact:
/// every NRV contribution is scaled by lcm(1..k) so that all arithmetic
/// stays in 128-bit integers. Supports at most 64 candidates.
class ScoreTable {
 public:
  ScoreTable(int range, std::size_t candidates, std::span<const BallotGroup> groups);

  std::size_t group_count() const { return multiplicities_.size(); }
  std::size_t candidate_count() const { return candidates_; }
  std::span<const std::int64_t> multiplicities() const { return multiplicities_; }

  /// Winner set of the subelection over the candidates in `present`, with
  /// `weights[g]` voters of group g (weights.size() == group_count()).
  CandidateMask winners(CandidateMask present, std::span<const std::int64_t> weights, VotingSystem system) const;

  /// Totals scaled by scale(); indices follow candidate order, absent
  /// candidates are 0.
  std::vector<__int128> scaled_totals(CandidateMask present, std::span<const std::int64_t> weights,
                                      VotingSystem system) const;

  __int128 scale(VotingSystem system) const { return system == VotingSystem::Range ? 1 : lcm_; }

 private:
  void accumulate(CandidateMask present, std::span<const std::int64_t> weights, VotingSystem system,
                  __int128* totals) const;

  int range_;
  std::size_t candidates_;
  std::vector<int> scores_;  // group-major
  std::vector<std::int64_t> multiplicities_;
  __int128 lcm_ = 1;
};

inline CandidateMask survivors(CandidateMask winners, TieModel ties) {
  if (ties == TieModel::Promote) return winners;
  return (winners != 0 && (winners & (winners - 1)) == 0) ? winners : 0;
}

}  // namespace rangectl::detail
