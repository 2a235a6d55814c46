#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rangectl/control.hpp"
#include "rangectl/election.hpp"
#include "rangectl/problems.hpp"

namespace rangectl {

/// An election file, optionally carrying a control instance.
///
/// `election` is what the file describes as the current election: when the
/// instance has spoilers it is the projection onto the registered
/// candidates, while `instance->base` keeps every column.
struct ElectionFile {
  Election election;
  /// From a `system:` line, if any (instances also copy it).
  std::optional<VotingSystem> system;
  std::optional<ControlInstance> instance;
};

/// Line-based format; `#` starts a comment.
///
///   range: 2
///   candidates: a b c
///   ballots:
///   5 | 2 0 1
///
/// plus optional `system:`, `action:`, `goal:`, `ties:`, `distinguished:`,
/// `limit:`, `spoilers:` lines and a `pool:` ballot section. Throws
/// ParseError (with a line number where one applies).
ElectionFile parse_election_file(const std::string& text);
Election parse_election(const std::string& text);

/// Canonical text: header lines, then ballots in ascending score order.
/// NRV is the default system, so only `system: rv` is ever written.
std::string serialize_election(const Election& election);
std::string serialize_election_file(const ElectionFile& file);
std::string serialize_instance(const ControlInstance& instance);

using ProblemInstance = std::variant<HittingSetInstance, X3CInstance>;

struct ParsedProblem {
  ProblemInstance instance;
  std::vector<std::string> warnings;
};

/// `elements:` line, one `set:` line per set, then `k:` for hitting set.
/// Files without `k:` (or with `problem: x3c`) are X3C instances.
ParsedProblem parse_problem(const std::string& text);
HittingSetInstance parse_hs_instance(const std::string& text);
X3CInstance parse_x3c_instance(const std::string& text);
std::string serialize_problem(const HittingSetInstance& instance);
std::string serialize_problem(const X3CInstance& instance);

/// Witness lines, e.g. "add: d" or "C1: w b1", one per line.
std::vector<std::string> describe_witness(const ControlInstance& instance, const Witness& witness);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace rangectl
