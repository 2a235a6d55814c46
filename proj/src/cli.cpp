#include "rangectl/cli.hpp"

#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rangectl/audit.hpp"
#include "rangectl/errors.hpp"
#include "rangectl/gadgets.hpp"
#include "rangectl/io.hpp"
#include "rangectl/oracles.hpp"

namespace rangectl {

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 2;
constexpr int kBudget = 3;

std::string join(const std::vector<std::string>& items, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

int cmd_tally(const std::string& path, const std::string& system_flag, std::ostream& out) {
  const auto file = parse_election_file(read_file(path));
  VotingSystem system = file.system.value_or(VotingSystem::Normalized);
  if (!system_flag.empty()) system = parse_voting_system(system_flag);
  const Tally t = tally(file.election, system);
  for (std::size_t i = 0; i < t.candidates.size(); ++i) out << t.candidates[i] << ": " << t.totals[i] << '\n';
  if (t.unique_winner) {
    out << "winner: " << *t.unique_winner << '\n';
  } else if (t.winners.empty()) {
    out << "winner: none\n";
  } else {
    out << "tied: " << join(t.winners) << '\n';
  }
  return kOk;
}

int cmd_control(const std::string& path, bool witness, const std::string& system_flag, std::uint64_t budget,
                unsigned threads, std::ostream& out) {
  const auto file = parse_election_file(read_file(path));
  if (!file.instance) throw ParseError(0, "'" + path + "' has no control instance (missing 'action:')");
  ControlInstance inst = *file.instance;
  if (!system_flag.empty()) inst.system = parse_voting_system(system_flag);
  SearchOptions opts;
  opts.budget = budget;
  opts.threads = threads;
  const auto outcome = solve(inst, opts);
  out << to_string(outcome.decision) << '\n';
  if (witness && outcome.witness) {
    for (const auto& line : describe_witness(inst, *outcome.witness)) out << line << '\n';
  }
  return outcome.decision == Decision::BudgetExceeded ? kBudget : kOk;
}

GadgetOutput build_gadget(GadgetKind kind, const std::string& text) {
  switch (kind) {
    case GadgetKind::HsCandidates: return gadget_hs_candidates(parse_hs_instance(text));
    case GadgetKind::HsDeleteConstructive: return gadget_hs_delete_constructive(parse_hs_instance(text));
    case GadgetKind::RhsVoterPartitionTp: return gadget_rhs_voter_partition_tp(parse_hs_instance(text));
    case GadgetKind::HsDestructiveCandidatePartition:
      return gadget_hs_destructive_candidate_partition(parse_hs_instance(text));
    case GadgetKind::X3cVoterPartitionTe: return gadget_x3c_voter_partition_te(parse_x3c_instance(text));
    case GadgetKind::DeletionToCandidatePartition: {
      const auto file = parse_election_file(text);
      if (!file.instance || file.instance->family != ControlFamily::DeleteCandidates) {
        throw ParseError(0, "deletion-to-candidate-partition needs a delete-candidates instance file");
      }
      return gadget_deletion_to_candidate_partition(file.instance->base, file.instance->distinguished,
                                                    file.instance->limit.value_or(0));
    }
  }
  throw std::logic_error("unreachable");
}

int cmd_gadget(const std::string& type, const std::string& path, const std::string& output, const std::string& label,
               std::ostream& out) {
  const auto gadget = build_gadget(parse_gadget_kind(type), read_file(path));
  const LabeledInstance* chosen = &gadget.instances.front();
  if (!label.empty()) {
    chosen = nullptr;
    for (const auto& li : gadget.instances) {
      if (li.label == label) chosen = &li;
    }
    if (chosen == nullptr) throw ValidationError("gadget has no instance labelled '" + label + "'");
  }
  const std::string text = serialize_instance(chosen->instance);
  if (output.empty()) {
    out << text;
    return kOk;
  }
  write_file(output, text);
  out << "wrote " << output << " (" << chosen->label << ")\n";
  std::vector<std::string> labels;
  for (const auto& li : gadget.instances) labels.push_back(li.label);
  out << "instances: " << join(labels) << '\n';
  out << "claim: " << gadget.claim_text << '\n';
  return kOk;
}

int cmd_oracle(const std::string& path, std::ostream& out, std::ostream& err) {
  const auto parsed = parse_problem(read_file(path));
  for (const auto& w : parsed.warnings) err << "warning: " << w << '\n';
  if (const auto* hs = std::get_if<HittingSetInstance>(&parsed.instance)) {
    const auto answer = solve_hitting_set(*hs);
    out << (answer.yes ? "YES" : "NO") << '\n';
    out << "minimum: " << answer.minimum_size << '\n';
    if (answer.witness) {
      std::vector<std::string> names;
      for (auto e : *answer.witness) names.push_back(hs->elements[e]);
      out << "hitting-set: " << join(names) << '\n';
    }
  } else {
    const auto& x3c = std::get<X3CInstance>(parsed.instance);
    const auto answer = solve_x3c(x3c);
    out << (answer.yes ? "YES" : "NO") << '\n';
    if (answer.witness) {
      std::vector<std::string> sets;
      for (auto idx : *answer.witness) {
        std::vector<std::string> names;
        for (auto e : x3c.sets[idx]) names.push_back(x3c.elements[e]);
        sets.push_back("{" + join(names, ",") + "}");
      }
      out << "cover: " << join(sets) << '\n';
    }
  }
  return kOk;
}

struct VerifyArgs {
  std::string gadget;
  std::string exhaustive;
  std::string random;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = 5'000'000;
  unsigned threads = 1;
  std::string checks = "equivalence,identities,replay";
  std::string format = "text";
  std::string output;
  std::string replay;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  AuditSpec spec;
  spec.gadget = parse_gadget_kind(args.gadget);
  if (!args.exhaustive.empty() && !args.random.empty()) throw ValidationError("give --exhaustive or --random, not both");
  if (!args.random.empty()) {
    spec.mode = SourceMode::Random;
    spec.bounds = parse_bounds(args.random);
    if (args.trials == 0) throw ValidationError("--random needs --trials");
  } else {
    spec.bounds = parse_bounds(args.exhaustive);
  }
  spec.trials = args.trials;
  spec.seed = args.seed;
  spec.budget = args.budget;
  spec.threads = args.threads;
  spec.checks = {false, false, false};
  std::istringstream in(args.checks);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "equivalence") {
      spec.checks.equivalence = true;
    } else if (item == "identities") {
      spec.checks.identities = true;
    } else if (item == "replay") {
      spec.checks.replay = true;
    } else if (!item.empty()) {
      throw ValidationError("unknown check '" + item + "'");
    }
  }
  if (args.format != "text" && args.format != "json") throw ValidationError("--format must be text or json");

  std::string text;
  if (!args.replay.empty()) {
    const auto rec = audit_instance(spec, args.replay);
    AuditReport single;
    single.spec = spec;
    single.records = {rec};
    text = args.format == "json" ? report_json_lines(single) : record_line(rec) + "\n";
  } else {
    const auto report = audit_gadget(spec);
    text = args.format == "json" ? report_json_lines(report) : report_text(report);
  }
  if (args.output.empty()) {
    out << text;
  } else {
    write_file(args.output, text);
  }
  return kOk;
}

}  // namespace

std::string classification_table() {
  struct Row {
    const char* control;
    const char* ties;
    const char* cells[10];
  };
  static const Row rows[] = {
      {"adding candidates", "", {"I", "V", "R", "R", "R", "R", "I", "V", "R", "R"}},
      {"deleting candidates", "", {"V", "I", "R", "R", "R", "R", "V", "I", "R", "R"}},
      {"partition of candidates", "TE", {"V", "I", "R", "R", "R", "R", "V", "I", "R", "R"}},
      {"partition of candidates", "TP", {"I", "I", "R", "R", "R", "R", "I", "I", "R", "R"}},
      {"run-off partition of candidates", "TE", {"V", "I", "R", "R", "R", "R", "V", "I", "R", "R"}},
      {"run-off partition of candidates", "TP", {"I", "I", "R", "R", "R", "R", "I", "I", "R", "R"}},
      {"adding voters", "", {"R", "V", "R", "V", "R", "V", "R", "V", "R", "V"}},
      {"deleting voters", "", {"R", "V", "R", "V", "R", "V", "R", "V", "R", "V"}},
      {"partition of voters", "TE", {"R", "V", "R", "V", "R", "R", "R", "V", "R", "R"}},
      {"partition of voters", "TP", {"R", "V", "R", "R", "R", "R", "R", "V", "R", "R"}},
  };
  std::ostringstream out;
  out << std::left << std::setw(33) << "control by" << std::setw(5) << "ties"
      << "approval  sp-av     fallback  rv        nrv\n";
  out << std::setw(33) << "" << std::setw(5) << "" << "C    D    C    D    C    D    C    D    C    D\n";
  for (const auto& row : rows) {
    out << std::setw(33) << row.control << std::setw(5) << row.ties;
    for (int i = 0; i < 10; ++i) out << std::setw(i == 9 ? 1 : 5) << row.cells[i];
    out << '\n';
  }
  out << "\nI = immune, V = vulnerable, R = resistant; C = constructive, D = destructive.\n"
         "These are published classifications reproduced as static metadata. This tool does not\n"
         "derive them; it checks the hardness reductions behind the RV and NRV entries on small instances.\n";
  return out.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rangectl: range voting and normalized range voting control toolkit", "rangectl"};
  app.require_subcommand(1);

  std::string path;
  std::string system;
  auto* tally_cmd = app.add_subcommand("tally", "Tally an election file");
  tally_cmd->add_option("file", path, "Election file")->required();
  tally_cmd->add_option("--system", system, "rv or nrv (default: the file's system line, else nrv)");

  bool witness = false;
  std::uint64_t budget = 50'000'000;
  unsigned threads = 1;
  auto* control_cmd = app.add_subcommand("control", "Decide a control instance");
  control_cmd->add_option("file", path, "Instance file")->required();
  control_cmd->add_flag("--witness", witness, "Print the witness action");
  control_cmd->add_option("--system", system, "Override the voting system (rv or nrv)");
  control_cmd->add_option("--budget", budget, "Maximum actions to evaluate");
  control_cmd->add_option("--threads", threads, "Solver threads (results do not depend on this)");

  std::string type;
  std::string output;
  std::string label;
  auto* gadget_cmd = app.add_subcommand("gadget", "Build a reduction gadget election");
  gadget_cmd->add_option("type", type, "Gadget type")->required();
  gadget_cmd->add_option("file", path, "Source instance file")->required();
  gadget_cmd->add_option("-o,--output", output, "Write the instance file here (default: stdout)");
  gadget_cmd->add_option("--instance", label, "Which of the gadget's control instances to write");

  auto* oracle_cmd = app.add_subcommand("oracle", "Solve a hitting-set or X3C instance exactly");
  oracle_cmd->add_option("file", path, "Problem file")->required();

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Audit a gadget against its oracle");
  verify_cmd->add_option("--gadget", va.gadget, "Gadget type")->required();
  verify_cmd->add_option("--exhaustive", va.exhaustive, "Exhaustive bounds, e.g. n<=4,m=2..3,k<=2");
  verify_cmd->add_option("--random", va.random, "Random-mode bounds");
  verify_cmd->add_option("--trials", va.trials, "Random instances to draw");
  verify_cmd->add_option("--seed", va.seed, "Seed");
  verify_cmd->add_option("--budget", va.budget, "Per-solver action budget");
  verify_cmd->add_option("--threads", va.threads, "Instances audited concurrently");
  verify_cmd->add_option("--checks", va.checks, "Comma list of equivalence, identities, replay");
  verify_cmd->add_option("--format", va.format, "text or json");
  verify_cmd->add_option("-o,--output", va.output, "Report file (default: stdout)");
  verify_cmd->add_option("--replay", va.replay, "Re-audit one instance encoding from a report");

  auto* table_cmd = app.add_subcommand("table", "Print the control classification table");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (tally_cmd->parsed()) return cmd_tally(path, system, out);
    if (control_cmd->parsed()) return cmd_control(path, witness, system, budget, threads, out);
    if (gadget_cmd->parsed()) return cmd_gadget(type, path, output, label, out);
    if (oracle_cmd->parsed()) return cmd_oracle(path, out, err);
    if (verify_cmd->parsed()) return cmd_verify(va, out);
    if (table_cmd->parsed()) {
      out << classification_table();
      return kOk;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace rangectl
