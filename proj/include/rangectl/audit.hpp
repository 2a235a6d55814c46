#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rangectl/control.hpp"
#include "rangectl/election.hpp"
#include "rangectl/gadgets.hpp"
#include "rangectl/problems.hpp"
#include "rangectl/rational.hpp"

namespace rangectl {

/// Uniformly random nonempty subsets of b1..bn. With `restricted`, the
/// parameters must satisfy m(k+1)+3 <= n-k.
HittingSetInstance gen_random_hs(std::size_t n, std::size_t m, std::int64_t k, std::uint64_t seed,
                                 bool restricted = false);

struct GeneratedX3C {
  X3CInstance instance;
  bool planted = false;
};

/// Every element is covered. Unless `plant` forces it, an exact cover is
/// planted with probability 1/2 (decided by the seed).
GeneratedX3C gen_random_x3c(std::size_t k, std::size_t set_count, std::uint64_t seed,
                            std::optional<bool> plant = std::nullopt);

/// Random election over c1..c<candidates> with up to `groups` distinct
/// ballots (multiplicities 1..3).
Election gen_random_election(std::size_t candidates, std::size_t groups, int range, std::uint64_t seed);

/// Hitting-set families with exactly m sets over n elements, as multisets
/// of nonempty subsets, one representative per element relabeling class.
std::vector<std::vector<std::vector<std::size_t>>> enumerate_hs_families(std::size_t n, std::size_t m);

/// Same for X3C: multisets of `set_count` 3-subsets of a 3k universe that
/// cover every element.
std::vector<std::vector<std::vector<std::size_t>>> enumerate_x3c_families(std::size_t k, std::size_t set_count);

struct IdentityResult {
  std::string claim;
  Rational computed;
  Rational expected;
  bool holds = false;
  bool must_hold = true;

  friend bool operator==(const IdentityResult&, const IdentityResult&) = default;
};

/// Left-hand side of the identity, tallied exactly under NRV.
Rational evaluate_identity(const Election& election, const ScoreIdentity& identity);
std::vector<IdentityResult> check_score_identities(const GadgetOutput& gadget);

/// Inclusive ranges per variable, e.g. "n<=4,m=2..3,k<=2". Variables are
/// n, m, k for hitting-set gadgets; k, s (set count) for X3C; c
/// (candidates), g (ballot groups), l (deletion limit) for the
/// deletion-to-partition gadget.
using Bounds = std::map<std::string, std::pair<std::int64_t, std::int64_t>>;
Bounds parse_bounds(const std::string& text);
std::string format_bounds(const Bounds& bounds);

enum class SourceMode { Exhaustive, Random };

struct AuditChecks {
  bool equivalence = true;
  bool identities = true;
  /// One-direction witness replay (TP voter-partition gadget only).
  bool replay = true;
};

struct AuditSpec {
  GadgetKind gadget = GadgetKind::HsCandidates;
  SourceMode mode = SourceMode::Exhaustive;
  /// Unset variables take the gadget's defaults.
  Bounds bounds;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  /// Per solver call.
  std::uint64_t budget = 5'000'000;
  AuditChecks checks;
  /// Instances audited concurrently; the report does not depend on it.
  unsigned threads = 1;
};

/// The defaults filled in, checked against the gadget's variable set.
Bounds effective_bounds(const AuditSpec& spec);

struct SolverAnswer {
  std::string label;
  Decision decision = Decision::No;
  std::string witness;  // describe_witness lines joined by "; "
  std::uint64_t explored = 0;

  friend bool operator==(const SolverAnswer&, const SolverAnswer&) = default;
};

enum class RecordStatus { Agree, Disagree, BudgetExceeded, NotChecked };
std::string_view to_string(RecordStatus status);

struct InstanceRecord {
  std::string encoding;
  /// Ordering key: (n, m, k) for hitting set, (|B|, |S|, k) for X3C,
  /// (candidates, groups, limit) for deletion sources.
  std::int64_t n = 0, m = 0, k = 0;
  /// Whether the source instance is a yes-instance.
  std::optional<bool> oracle;
  std::string oracle_witness;
  std::vector<SolverAnswer> solvers;
  std::vector<IdentityResult> identities;
  /// One-direction replay: whether the explicit partition defeats the
  /// distinguished candidate (unset when not applicable).
  std::optional<bool> replay;
  /// Full NRV totals of the gadget election, "name=total" joined by spaces.
  std::string gadget_tally;
  RecordStatus status = RecordStatus::NotChecked;
  std::uint64_t work = 0;

  bool has_failure() const;
  friend bool operator==(const InstanceRecord&, const InstanceRecord&) = default;
};

struct AuditReport {
  AuditSpec spec;
  std::vector<InstanceRecord> records;
  /// True when every checked instance agrees (budget-exceeded ones excluded).
  bool agreement = true;
  std::size_t agree = 0, disagree = 0, budget_exceeded = 0;
  /// Must-hold identity failures / all identity failures.
  std::size_t required_identity_failures = 0, identity_failures = 0;
  std::size_t replay_failures = 0;
  /// Records with any failed check, ordered by (n, m, k, encoding).
  std::vector<InstanceRecord> counterexamples;
};

AuditReport audit_gadget(const AuditSpec& spec);

/// Re-audits a single source instance given its record encoding.
InstanceRecord audit_instance(const AuditSpec& spec, const std::string& encoding);

/// Re-runs the record's instance and compares with the stored record.
bool replays_identically(const AuditSpec& spec, const InstanceRecord& record);

std::string encode_deletion_source(const Election& source, const std::string& distinguished, std::int64_t limit);

std::string report_text(const AuditReport& report);
/// One JSON object per line, one line per instance.
std::string report_json_lines(const AuditReport& report);
std::string record_line(const InstanceRecord& record);

}  // namespace rangectl
