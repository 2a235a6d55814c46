#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rangectl/election.hpp"

namespace rangectl {

enum class ControlFamily {
  AddCandidates,
  DeleteCandidates,
  AddVoters,
  DeleteVoters,
  PartitionCandidates,
  RunoffPartitionCandidates,
  PartitionVoters,
};

enum class Goal { Constructive, Destructive };

/// Subelection tie handling: Promote sends every tied winner on,
/// Eliminate sends nobody on unless the winner is unique.
enum class TieModel { Promote, Eliminate };

std::string_view to_string(ControlFamily family);
std::string_view to_string(Goal goal);
std::string_view to_string(TieModel ties);
ControlFamily parse_control_family(std::string_view text);
Goal parse_goal(std::string_view text);
TieModel parse_tie_model(std::string_view text);

bool is_partition_family(ControlFamily family);
bool has_limit(ControlFamily family);

/// A control decision problem.
///
/// For AddCandidates `base` is defined over registered and spoiler
/// candidates together, so every ballot already scores the spoilers; the
/// spoilers are listed in `spoilers`. For AddVoters `pool` holds the
/// addable voters, scored over all of `base`'s candidates.
struct ControlInstance {
  Election base;
  VotingSystem system = VotingSystem::Normalized;
  ControlFamily family = ControlFamily::AddCandidates;
  Goal goal = Goal::Constructive;
  std::optional<TieModel> ties;
  std::string distinguished;
  std::optional<std::int64_t> limit;
  std::vector<std::string> spoilers;
  std::vector<BallotGroup> pool;

  /// Throws ValidationError on a malformed instance.
  void validate() const;

  /// Non-spoiler candidates in declaration order.
  std::vector<std::string> registered() const;
};

/// The successful action found by a solver. Which fields are used depends on
/// the family:
///  - Add/DeleteCandidates: `candidates` are the added/deleted ids.
///  - Add/DeleteVoters: `counts[i]` voters taken from pool group i / removed
///    from base group i.
///  - Partition/RunoffPartitionCandidates: `candidates` is C1 (C2 is the rest).
///  - PartitionVoters: `counts[i]` voters of base group i go to V1.
struct Witness {
  std::vector<std::string> candidates;
  std::vector<std::int64_t> counts;

  friend bool operator==(const Witness&, const Witness&) = default;
};

enum class Decision { Yes, No, BudgetExceeded };
std::string_view to_string(Decision decision);

struct ControlOutcome {
  Decision decision = Decision::No;
  std::optional<Witness> witness;
  /// Actions evaluated, in canonical order, up to and including the witness.
  std::uint64_t explored = 0;

  friend bool operator==(const ControlOutcome&, const ControlOutcome&) = default;
};

struct SearchOptions {
  /// Maximum number of evaluated actions before giving up with BudgetExceeded.
  std::uint64_t budget = 50'000'000;
  /// Worker threads; results never depend on this.
  unsigned threads = 1;
};

/// Candidates that leave a subelection under the given tie model.
std::vector<std::string> subelection_survivors(const Election& election, VotingSystem system, TieModel ties);

ControlOutcome solve_add_candidates(const ControlInstance& instance, const SearchOptions& options = {});
ControlOutcome solve_delete_candidates(const ControlInstance& instance, const SearchOptions& options = {});
ControlOutcome solve_add_voters(const ControlInstance& instance, const SearchOptions& options = {});
ControlOutcome solve_delete_voters(const ControlInstance& instance, const SearchOptions& options = {});
ControlOutcome solve_partition_candidates(const ControlInstance& instance, const SearchOptions& options = {});
ControlOutcome solve_runoff_partition_candidates(const ControlInstance& instance,
                                                 const SearchOptions& options = {});
ControlOutcome solve_partition_voters(const ControlInstance& instance, const SearchOptions& options = {});

/// Dispatches on `instance.family`.
ControlOutcome solve(const ControlInstance& instance, const SearchOptions& options = {});

/// Re-evaluates a witness with the public election operations (project,
/// tally) rather than the solver's internal engine. Returns whether the
/// action achieves the instance's goal. Throws ValidationError if the
/// witness does not describe a legal action for the instance.
bool replay_witness(const ControlInstance& instance, const Witness& witness);

/// Returns a copy with the base election and pool scaled by `factor`.
ControlInstance scale_instance(const ControlInstance& instance, int factor);

}  // namespace rangectl
