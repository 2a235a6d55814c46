#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rangectl/control.hpp"
#include "rangectl/election.hpp"
#include "rangectl/problems.hpp"
#include "rangectl/rational.hpp"

namespace rangectl {

enum class GadgetKind {
  HsCandidates,                     ///< hitting set -> add/delete candidates (2-NRV)
  HsDeleteConstructive,             ///< hitting set -> constructive delete candidates (2-NRV)
  RhsVoterPartitionTp,              ///< restricted hitting set -> destructive voter partition, TP (2-NRV)
  X3cVoterPartitionTe,              ///< X3C -> destructive voter partition, TE (4-NRV)
  DeletionToCandidatePartition,     ///< r-NRV delete candidates -> 2r-NRV (runoff) partition of candidates
  HsDestructiveCandidatePartition,  ///< hitting set -> destructive (runoff) partition of candidates (2-NRV)
};

std::string_view to_string(GadgetKind kind);
GadgetKind parse_gadget_kind(std::string_view text);
std::vector<GadgetKind> all_gadget_kinds();

/// Candidates present plus, optionally, how many voters of each ballot
/// group take part (aligned with the gadget election's canonical groups;
/// empty means the full voter set).
struct Subelection {
  std::string label;
  std::vector<std::string> candidates;
  std::vector<std::int64_t> weights;
};

enum class Relation { Equal, AtMost, AtLeast, Greater };
std::string_view to_string(Relation relation);

/// A closed-form claim about a subelection's totals:
///   sum(coeff * total(candidate)) - max(total over `minus_max_of`)  REL  expected
/// `minus_max_of` may be empty.
struct ScoreIdentity {
  Subelection subelection;
  std::vector<std::pair<std::string, std::int64_t>> terms;
  std::vector<std::string> minus_max_of;
  Relation relation = Relation::Equal;
  Rational expected;
  std::string formula;
  /// Identities the construction is known to satisfy; the rest are
  /// assertions copied from hand-worked tables whose failures are findings.
  bool must_hold = true;

  std::string describe() const;
};

/// What the gadget's control instances are supposed to be equivalent to.
enum class Claim {
  HittingSetWithinBudget,
  ExactCoverExists,
  SourceDeletionYes,
};

struct LabeledInstance {
  std::string label;
  ControlInstance instance;
};

struct GadgetOutput {
  GadgetKind kind = GadgetKind::HsCandidates;
  Election election;
  std::vector<LabeledInstance> instances;
  std::vector<ScoreIdentity> identities;
  Claim claim = Claim::HittingSetWithinBudget;
  std::string claim_text;
};

/// Requires m >= 2 and k < n. `certificate` (a hitting set of size <= k)
/// adds the identities for the election restricted to it.
GadgetOutput gadget_hs_candidates(const HittingSetInstance& hs,
                                  const std::optional<std::vector<std::size_t>>& certificate = std::nullopt);

/// `certificate`, when given, is padded (lexicographically) to exactly k
/// elements and used for the hand-worked total identities.
GadgetOutput gadget_hs_delete_constructive(const HittingSetInstance& hs,
                                           const std::optional<std::vector<std::size_t>>& certificate = std::nullopt);

/// Requires m(k+1) + 3 <= n - k.
GadgetOutput gadget_rhs_voter_partition_tp(const HittingSetInstance& hs);

/// The explicit voter split for a hitting set of size <= k: one
/// single-element voter per hitting-set element plus one w-only voter in V1.
/// Returned as V1 counts over the gadget election's ballot groups.
std::vector<std::int64_t> tp_explicit_partition(const GadgetOutput& gadget, const HittingSetInstance& hs,
                                                const std::vector<std::size_t>& hitting_set);

/// Requires every element to be covered. `cover` (set indices of an exact
/// cover) adds the identities for the cover-side subelection.
GadgetOutput gadget_x3c_voter_partition_te(const X3CInstance& x3c,
                                           const std::optional<std::vector<std::size_t>>& cover = std::nullopt);

/// `source` is an r-NRV election; the deletion limit is capped at |C| - 1
/// (w itself is never deletable).
GadgetOutput gadget_deletion_to_candidate_partition(const Election& source, const std::string& distinguished,
                                                    std::int64_t limit);

/// Requires k < n. `certificate` (a hitting set of size <= k) adds the
/// identities for the subelection of w against it.
GadgetOutput gadget_hs_destructive_candidate_partition(
    const HittingSetInstance& hs, const std::optional<std::vector<std::size_t>>& certificate = std::nullopt);

/// Index of the canonical ballot group with exactly these scores.
std::optional<std::size_t> find_group(const Election& election, const std::vector<int>& scores);

}  // namespace rangectl
