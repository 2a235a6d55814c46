#include "rangectl/control.hpp"

#include <algorithm>
#include <set>

#include "rangectl/errors.hpp"
#include "score_table.hpp"
#include "search.hpp"

namespace rangectl {

using detail::bit;
using detail::CandidateMask;
using detail::ScoreTable;

std::string_view to_string(ControlFamily family) {
  switch (family) {
    case ControlFamily::AddCandidates: return "add-candidates";
    case ControlFamily::DeleteCandidates: return "delete-candidates";
    case ControlFamily::AddVoters: return "add-voters";
    case ControlFamily::DeleteVoters: return "delete-voters";
    case ControlFamily::PartitionCandidates: return "partition-candidates";
    case ControlFamily::RunoffPartitionCandidates: return "runoff-partition-candidates";
    case ControlFamily::PartitionVoters: return "partition-voters";
  }
  return "?";
}

std::string_view to_string(Goal goal) { return goal == Goal::Constructive ? "constructive" : "destructive"; }

std::string_view to_string(TieModel ties) { return ties == TieModel::Promote ? "promote" : "eliminate"; }

std::string_view to_string(Decision decision) {
  switch (decision) {
    case Decision::Yes: return "YES";
    case Decision::No: return "NO";
    case Decision::BudgetExceeded: return "BUDGET-EXCEEDED";
  }
  return "?";
}

ControlFamily parse_control_family(std::string_view text) {
  for (auto f : {ControlFamily::AddCandidates, ControlFamily::DeleteCandidates, ControlFamily::AddVoters,
                 ControlFamily::DeleteVoters, ControlFamily::PartitionCandidates,
                 ControlFamily::RunoffPartitionCandidates, ControlFamily::PartitionVoters}) {
    if (to_string(f) == text) return f;
  }
  throw ValidationError("unknown control action '" + std::string(text) + "'");
}

Goal parse_goal(std::string_view text) {
  if (text == "constructive") return Goal::Constructive;
  if (text == "destructive") return Goal::Destructive;
  throw ValidationError("unknown goal '" + std::string(text) + "'");
}

TieModel parse_tie_model(std::string_view text) {
  if (text == "promote" || text == "tp") return TieModel::Promote;
  if (text == "eliminate" || text == "te") return TieModel::Eliminate;
  throw ValidationError("unknown tie model '" + std::string(text) + "'");
}

bool is_partition_family(ControlFamily family) {
  return family == ControlFamily::PartitionCandidates || family == ControlFamily::RunoffPartitionCandidates ||
         family == ControlFamily::PartitionVoters;
}

bool has_limit(ControlFamily family) { return !is_partition_family(family); }

std::vector<std::string> ControlInstance::registered() const {
  std::vector<std::string> out;
  for (const auto& c : base.candidates()) {
    if (std::find(spoilers.begin(), spoilers.end(), c) == spoilers.end()) out.push_back(c);
  }
  return out;
}

void ControlInstance::validate() const {
  std::set<std::string> spoiler_set;
  for (const auto& s : spoilers) {
    base.require_index(s);
    if (!spoiler_set.insert(s).second) throw ValidationError("duplicate spoiler '" + s + "'");
  }
  if (!spoilers.empty() && family != ControlFamily::AddCandidates) {
    throw ValidationError("spoilers are only meaningful for add-candidates");
  }
  if (!base.index_of(distinguished)) throw ValidationError("distinguished candidate '" + distinguished + "' unknown");
  if (spoiler_set.count(distinguished) != 0) throw ValidationError("distinguished candidate cannot be a spoiler");
  if (is_partition_family(family) != ties.has_value()) {
    throw ValidationError(is_partition_family(family) ? "partition control needs a tie model"
                                                      : "tie model given for a non-partition action");
  }
  if (has_limit(family) != limit.has_value()) {
    throw ValidationError(has_limit(family) ? "add/delete control needs a limit"
                                            : "limit given for a partition action");
  }
  if (limit && *limit < 0) throw ValidationError("limit must be >= 0");
  if (!pool.empty() && family != ControlFamily::AddVoters) {
    throw ValidationError("a voter pool is only meaningful for add-voters");
  }
  for (const auto& g : pool) {
    if (g.scores.size() != base.candidate_count()) {
      throw ValidationError("pool ballot scores " + std::to_string(g.scores.size()) + " candidates, expected " +
                            std::to_string(base.candidate_count()));
    }
    if (g.multiplicity < 1) throw ValidationError("pool multiplicity must be >= 1");
    for (int s : g.scores) {
      if (s < 0 || s > base.range()) throw ValidationError("pool score outside [0, k]");
    }
  }
}

std::vector<std::string> subelection_survivors(const Election& election, VotingSystem system, TieModel ties) {
  Tally t = tally(election, system);
  if (ties == TieModel::Promote || t.winners.size() == 1) return t.winners;
  return {};
}

namespace {

struct Context {
  const ControlInstance& instance;
  ScoreTable table;
  std::size_t target;              // index of the distinguished candidate
  CandidateMask registered = 0;    // non-spoiler candidates
  std::vector<std::int64_t> full;  // base multiplicities

  static std::vector<BallotGroup> groups_for(const ControlInstance& inst) {
    std::vector<BallotGroup> groups = inst.base.ballots();
    if (inst.family == ControlFamily::AddVoters) {
      auto pool = canonical_ballots(inst.pool);
      groups.insert(groups.end(), pool.begin(), pool.end());
    }
    return groups;
  }

  explicit Context(const ControlInstance& inst)
      : instance(inst),
        table(inst.base.range(), inst.base.candidate_count(), groups_for(inst)),
        target(inst.base.require_index(inst.distinguished)) {
    for (const auto& id : inst.registered()) registered |= bit(inst.base.require_index(id));
    for (const auto& g : inst.base.ballots()) full.push_back(g.multiplicity);
  }

  bool goal_met(CandidateMask final_winners) const {
    const bool wins = final_winners == bit(target);
    return instance.goal == Goal::Constructive ? wins : !wins;
  }
};

ControlOutcome to_outcome(Decision decision, std::uint64_t explored, std::optional<Witness> witness) {
  ControlOutcome out;
  out.decision = decision;
  out.explored = explored;
  out.witness = std::move(witness);
  return out;
}

void require_family(const ControlInstance& instance, ControlFamily family) {
  if (instance.family != family) {
    throw ValidationError("expected a " + std::string(to_string(family)) + " instance, got " +
                          std::string(to_string(instance.family)));
  }
  instance.validate();
}

std::vector<std::size_t> mask_indices(CandidateMask mask) {
  std::vector<std::size_t> out;
  for (; mask != 0; mask &= mask - 1) out.push_back(static_cast<std::size_t>(__builtin_ctzll(mask)));
  return out;
}

std::vector<std::string> names_of(const Election& e, CandidateMask mask) {
  std::vector<std::string> out;
  for (auto i : mask_indices(mask)) out.push_back(e.candidates()[i]);
  return out;
}

// Shared driver for the two candidate add/delete families: `domain` lists
// candidate indices that may be toggled; `final_mask` maps a chosen subset
// of the domain to the final candidate set.
template <class FinalMask>
ControlOutcome solve_candidate_subset(const Context& ctx, const std::vector<std::size_t>& domain,
                                      const FinalMask& final_mask, const SearchOptions& options) {
  detail::SubsetGenerator gen(domain.size(), static_cast<std::size_t>(*ctx.instance.limit));
  auto chosen_mask = [&](const std::vector<std::size_t>& picks) {
    CandidateMask m = 0;
    for (auto p : picks) m |= bit(domain[p]);
    return m;
  };
  auto accept = [&](const std::vector<std::size_t>& picks) {
    const CandidateMask present = final_mask(chosen_mask(picks));
    return ctx.goal_met(ctx.table.winners(present, ctx.full, ctx.instance.system));
  };
  auto found = detail::first_success<std::vector<std::size_t>>(gen, accept, options);
  std::optional<Witness> witness;
  if (found.witness) witness = Witness{names_of(ctx.instance.base, chosen_mask(*found.witness)), {}};
  return to_outcome(found.decision, found.explored, std::move(witness));
}

}  // namespace

ControlOutcome solve_add_candidates(const ControlInstance& instance, const SearchOptions& options) {
  require_family(instance, ControlFamily::AddCandidates);
  Context ctx(instance);
  std::vector<std::size_t> domain;
  for (const auto& s : instance.base.candidates()) {
    if (std::find(instance.spoilers.begin(), instance.spoilers.end(), s) != instance.spoilers.end()) {
      domain.push_back(instance.base.require_index(s));
    }
  }
  return solve_candidate_subset(
      ctx, domain, [&](CandidateMask added) { return ctx.registered | added; }, options);
}

ControlOutcome solve_delete_candidates(const ControlInstance& instance, const SearchOptions& options) {
  require_family(instance, ControlFamily::DeleteCandidates);
  Context ctx(instance);
  std::vector<std::size_t> domain;
  for (auto i : mask_indices(ctx.registered)) {
    if (i != ctx.target) domain.push_back(i);
  }
  return solve_candidate_subset(
      ctx, domain, [&](CandidateMask removed) { return ctx.registered & ~removed; }, options);
}

ControlOutcome solve_add_voters(const ControlInstance& instance, const SearchOptions& options) {
  require_family(instance, ControlFamily::AddVoters);
  Context ctx(instance);
  const std::size_t base_groups = instance.base.ballots().size();
  std::vector<std::int64_t> radix(ctx.table.multiplicities().begin() + static_cast<std::ptrdiff_t>(base_groups),
                                  ctx.table.multiplicities().end());
  detail::CountVectorGenerator gen(radix, *instance.limit);
  auto accept = [&](const std::vector<std::int64_t>& take) {
    std::vector<std::int64_t> weights = ctx.full;
    weights.insert(weights.end(), take.begin(), take.end());
    return ctx.goal_met(ctx.table.winners(ctx.registered, weights, instance.system));
  };
  auto found = detail::first_success<std::vector<std::int64_t>>(gen, accept, options);
  std::optional<Witness> witness;
  if (found.witness) witness = Witness{{}, *found.witness};
  return to_outcome(found.decision, found.explored, std::move(witness));
}

ControlOutcome solve_delete_voters(const ControlInstance& instance, const SearchOptions& options) {
  require_family(instance, ControlFamily::DeleteVoters);
  Context ctx(instance);
  detail::CountVectorGenerator gen(ctx.full, *instance.limit);
  auto accept = [&](const std::vector<std::int64_t>& removed) {
    std::vector<std::int64_t> weights = ctx.full;
    for (std::size_t g = 0; g < weights.size(); ++g) weights[g] -= removed[g];
    return ctx.goal_met(ctx.table.winners(ctx.registered, weights, instance.system));
  };
  auto found = detail::first_success<std::vector<std::int64_t>>(gen, accept, options);
  std::optional<Witness> witness;
  if (found.witness) witness = Witness{{}, *found.witness};
  return to_outcome(found.decision, found.explored, std::move(witness));
}

namespace {

ControlOutcome solve_candidate_partition(const ControlInstance& instance, bool runoff, const SearchOptions& options) {
  Context ctx(instance);
  const auto members = mask_indices(ctx.registered);
  if (members.size() > 40) throw ValidationError("candidate partition search supports at most 40 candidates");
  const TieModel ties = *instance.ties;
  auto first_side = [&](std::uint64_t assignment) {
    CandidateMask m = 0;
    for (std::size_t j = 0; j < members.size(); ++j) {
      if ((assignment >> j) & 1U) m |= bit(members[j]);
    }
    return m;
  };
  detail::MaskGenerator gen(members.size());
  auto accept = [&](std::uint64_t assignment) {
    const CandidateMask c1 = first_side(assignment);
    const CandidateMask c2 = ctx.registered & ~c1;
    const CandidateMask d1 = detail::survivors(ctx.table.winners(c1, ctx.full, instance.system), ties);
    const CandidateMask rest =
        runoff ? detail::survivors(ctx.table.winners(c2, ctx.full, instance.system), ties) : c2;
    return ctx.goal_met(ctx.table.winners(d1 | rest, ctx.full, instance.system));
  };
  auto found = detail::first_success<std::uint64_t>(gen, accept, options);
  std::optional<Witness> witness;
  if (found.witness) witness = Witness{names_of(instance.base, first_side(*found.witness)), {}};
  return to_outcome(found.decision, found.explored, std::move(witness));
}

}  // namespace

ControlOutcome solve_partition_candidates(const ControlInstance& instance, const SearchOptions& options) {
  require_family(instance, ControlFamily::PartitionCandidates);
  return solve_candidate_partition(instance, false, options);
}

ControlOutcome solve_runoff_partition_candidates(const ControlInstance& instance, const SearchOptions& options) {
  require_family(instance, ControlFamily::RunoffPartitionCandidates);
  return solve_candidate_partition(instance, true, options);
}

ControlOutcome solve_partition_voters(const ControlInstance& instance, const SearchOptions& options) {
  require_family(instance, ControlFamily::PartitionVoters);
  Context ctx(instance);
  const TieModel ties = *instance.ties;
  std::int64_t unlimited = 0;
  for (auto m : ctx.full) unlimited += m;
  detail::CountVectorGenerator gen(ctx.full, unlimited);
  auto accept = [&](const std::vector<std::int64_t>& first) {
    std::vector<std::int64_t> second = ctx.full;
    for (std::size_t g = 0; g < second.size(); ++g) second[g] -= first[g];
    const CandidateMask d1 = detail::survivors(ctx.table.winners(ctx.registered, first, instance.system), ties);
    const CandidateMask d2 = detail::survivors(ctx.table.winners(ctx.registered, second, instance.system), ties);
    return ctx.goal_met(ctx.table.winners(d1 | d2, ctx.full, instance.system));
  };
  auto found = detail::first_success<std::vector<std::int64_t>>(gen, accept, options);
  std::optional<Witness> witness;
  if (found.witness) witness = Witness{{}, *found.witness};
  return to_outcome(found.decision, found.explored, std::move(witness));
}

ControlOutcome solve(const ControlInstance& instance, const SearchOptions& options) {
  switch (instance.family) {
    case ControlFamily::AddCandidates: return solve_add_candidates(instance, options);
    case ControlFamily::DeleteCandidates: return solve_delete_candidates(instance, options);
    case ControlFamily::AddVoters: return solve_add_voters(instance, options);
    case ControlFamily::DeleteVoters: return solve_delete_voters(instance, options);
    case ControlFamily::PartitionCandidates: return solve_partition_candidates(instance, options);
    case ControlFamily::RunoffPartitionCandidates: return solve_runoff_partition_candidates(instance, options);
    case ControlFamily::PartitionVoters: return solve_partition_voters(instance, options);
  }
  throw ValidationError("unknown control family");
}

// --- replay -------------------------------------------------------------

namespace {

bool outcome_meets_goal(const ControlInstance& instance, const Election& final_election) {
  const Tally t = tally(final_election, instance.system);
  const bool wins = t.unique_winner && *t.unique_winner == instance.distinguished;
  return instance.goal == Goal::Constructive ? wins : !wins;
}

std::vector<std::string> union_in_order(const Election& base, const std::vector<std::string>& a,
                                        const std::vector<std::string>& b) {
  std::vector<std::string> out;
  for (const auto& c : base.candidates()) {
    if (std::find(a.begin(), a.end(), c) != a.end() || std::find(b.begin(), b.end(), c) != b.end()) {
      out.push_back(c);
    }
  }
  return out;
}

std::vector<std::string> minus(const std::vector<std::string>& from, const std::vector<std::string>& drop) {
  std::vector<std::string> out;
  for (const auto& c : from) {
    if (std::find(drop.begin(), drop.end(), c) == drop.end()) out.push_back(c);
  }
  return out;
}

Election with_counts(const Election& base, const std::vector<BallotGroup>& groups,
                     const std::vector<std::int64_t>& counts) {
  std::vector<BallotGroup> kept;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (counts[g] > 0) kept.push_back({groups[g].scores, counts[g]});
  }
  return Election(base.range(), base.candidates(), std::move(kept));
}

void check_counts(const std::vector<std::int64_t>& counts, const std::vector<BallotGroup>& groups,
                  std::optional<std::int64_t> limit) {
  if (counts.size() != groups.size()) throw ValidationError("witness count vector has the wrong length");
  std::int64_t sum = 0;
  for (std::size_t g = 0; g < counts.size(); ++g) {
    if (counts[g] < 0 || counts[g] > groups[g].multiplicity) throw ValidationError("witness count out of range");
    sum += counts[g];
  }
  if (limit && sum > *limit) throw ValidationError("witness exceeds the limit");
}

}  // namespace

bool replay_witness(const ControlInstance& instance, const Witness& witness) {
  instance.validate();
  const auto registered = instance.registered();
  auto in = [](const std::vector<std::string>& set, const std::string& x) {
    return std::find(set.begin(), set.end(), x) != set.end();
  };
  switch (instance.family) {
    case ControlFamily::AddCandidates: {
      for (const auto& c : witness.candidates) {
        if (!in(instance.spoilers, c)) throw ValidationError("witness adds non-spoiler '" + c + "'");
      }
      if (static_cast<std::int64_t>(witness.candidates.size()) > *instance.limit) {
        throw ValidationError("witness exceeds the limit");
      }
      return outcome_meets_goal(instance,
                                project(instance.base, union_in_order(instance.base, registered, witness.candidates)));
    }
    case ControlFamily::DeleteCandidates: {
      for (const auto& c : witness.candidates) {
        if (!in(registered, c) || c == instance.distinguished) {
          throw ValidationError("witness deletes an undeletable candidate '" + c + "'");
        }
      }
      if (static_cast<std::int64_t>(witness.candidates.size()) > *instance.limit) {
        throw ValidationError("witness exceeds the limit");
      }
      return outcome_meets_goal(instance, project(instance.base, minus(registered, witness.candidates)));
    }
    case ControlFamily::AddVoters: {
      const auto pool = canonical_ballots(instance.pool);
      check_counts(witness.counts, pool, instance.limit);
      std::vector<BallotGroup> all = instance.base.ballots();
      for (std::size_t g = 0; g < pool.size(); ++g) {
        if (witness.counts[g] > 0) all.push_back({pool[g].scores, witness.counts[g]});
      }
      return outcome_meets_goal(instance, Election(instance.base.range(), instance.base.candidates(), all));
    }
    case ControlFamily::DeleteVoters: {
      const auto& groups = instance.base.ballots();
      check_counts(witness.counts, groups, instance.limit);
      std::vector<std::int64_t> kept;
      for (std::size_t g = 0; g < groups.size(); ++g) kept.push_back(groups[g].multiplicity - witness.counts[g]);
      return outcome_meets_goal(instance, with_counts(instance.base, groups, kept));
    }
    case ControlFamily::PartitionCandidates:
    case ControlFamily::RunoffPartitionCandidates: {
      for (const auto& c : witness.candidates) {
        if (!in(registered, c)) throw ValidationError("witness partitions unknown candidate '" + c + "'");
      }
      const auto c2 = minus(registered, witness.candidates);
      const auto d1 = subelection_survivors(project(instance.base, witness.candidates), instance.system,
                                            *instance.ties);
      const auto rest = instance.family == ControlFamily::RunoffPartitionCandidates
                            ? subelection_survivors(project(instance.base, c2), instance.system, *instance.ties)
                            : c2;
      return outcome_meets_goal(instance, project(instance.base, union_in_order(instance.base, d1, rest)));
    }
    case ControlFamily::PartitionVoters: {
      const auto& groups = instance.base.ballots();
      check_counts(witness.counts, groups, std::nullopt);
      std::vector<std::int64_t> second;
      for (std::size_t g = 0; g < groups.size(); ++g) second.push_back(groups[g].multiplicity - witness.counts[g]);
      const auto d1 =
          subelection_survivors(with_counts(instance.base, groups, witness.counts), instance.system, *instance.ties);
      const auto d2 =
          subelection_survivors(with_counts(instance.base, groups, second), instance.system, *instance.ties);
      return outcome_meets_goal(instance, project(instance.base, union_in_order(instance.base, d1, d2)));
    }
  }
  throw ValidationError("unknown control family");
}

ControlInstance scale_instance(const ControlInstance& instance, int factor) {
  ControlInstance out = instance;
  out.base = scale_election(instance.base, factor);
  for (auto& g : out.pool) {
    for (int& s : g.scores) s *= factor;
  }
  return out;
}

}  // namespace rangectl
