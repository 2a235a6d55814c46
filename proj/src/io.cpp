#include "rangectl/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "rangectl/errors.hpp"

namespace rangectl {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::int64_t parse_int(const std::string& text, int line, const std::string& what) {
  std::size_t used = 0;
  std::int64_t value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw ParseError(line, what + " '" + text + "' is not an integer");
  }
  if (used != text.size()) throw ParseError(line, what + " '" + text + "' is not an integer");
  return value;
}

struct Line {
  int number;
  std::string key;  // empty for ballot lines
  std::string value;
};

// Splits into `key: value` lines and ballot lines (containing '|').
std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.find('|') != std::string::npos) {
      out.push_back({number, "", line});
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(number, "expected 'key: value', got '" + line + "'");
    out.push_back({number, trim(line.substr(0, colon)), trim(line.substr(colon + 1))});
  }
  return out;
}

BallotGroup parse_ballot(const Line& line, std::size_t columns, int range) {
  const auto bar = line.value.find('|');
  BallotGroup group;
  group.multiplicity = parse_int(trim(line.value.substr(0, bar)), line.number, "multiplicity");
  if (group.multiplicity < 1) throw ParseError(line.number, "multiplicity must be >= 1");
  for (const auto& w : words(line.value.substr(bar + 1))) {
    const auto score = parse_int(w, line.number, "score");
    if (score < 0 || score > range) {
      throw ParseError(line.number, "score " + w + " outside [0," + std::to_string(range) + "]");
    }
    group.scores.push_back(static_cast<int>(score));
  }
  if (group.scores.size() != columns) {
    throw ParseError(line.number, "ballot has " + std::to_string(group.scores.size()) + " scores but there are " +
                                      std::to_string(columns) + " candidates");
  }
  return group;
}

void write_ballots(std::ostringstream& out, const std::vector<BallotGroup>& groups) {
  for (const auto& g : groups) {
    out << g.multiplicity << " |";
    for (int s : g.scores) out << ' ' << s;
    out << '\n';
  }
}

std::string join(const std::vector<std::string>& items, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

const std::set<std::string> kInstanceKeys = {"system", "action", "goal", "ties", "distinguished", "limit", "spoilers"};

}  // namespace

ElectionFile parse_election_file(const std::string& text) {
  std::map<std::string, Line> headers;
  std::vector<Line> ballot_lines;
  std::vector<Line> pool_lines;
  std::vector<Line>* section = nullptr;
  for (const auto& line : tokenize(text)) {
    if (line.key.empty()) {
      if (section == nullptr) throw ParseError(line.number, "ballot line outside a 'ballots:' or 'pool:' section");
      section->push_back(line);
      continue;
    }
    static const std::set<std::string> known = [] {
      auto keys = kInstanceKeys;
      keys.insert({"range", "candidates", "ballots", "pool"});
      return keys;
    }();
    if (known.count(line.key) == 0) throw ParseError(line.number, "unknown section '" + line.key + "'");
    if (!headers.emplace(line.key, line).second) throw ParseError(line.number, "duplicate '" + line.key + ":' line");
    if (line.key == "ballots" || line.key == "pool") {
      if (!line.value.empty()) throw ParseError(line.number, "'" + line.key + ":' takes no value");
      section = line.key == "ballots" ? &ballot_lines : &pool_lines;
    } else {
      section = nullptr;
    }
  }
  for (const char* required : {"range", "candidates", "ballots"}) {
    if (headers.count(required) == 0) throw ParseError(0, std::string("missing '") + required + ":' header");
  }

  const Line& range_line = headers.at("range");
  const auto range = parse_int(range_line.value, range_line.number, "range");
  if (range < 1 || range > 1'000'000) throw ParseError(range_line.number, "range must be between 1 and 1000000");

  const Line& cand_line = headers.at("candidates");
  const auto candidates = words(cand_line.value);
  {
    std::set<std::string> seen;
    for (const auto& c : candidates) {
      if (!is_valid_candidate_id(c)) throw ParseError(cand_line.number, "invalid candidate id '" + c + "'");
      if (!seen.insert(c).second) throw ParseError(cand_line.number, "duplicate candidate '" + c + "'");
    }
  }

  std::vector<BallotGroup> ballots;
  for (const auto& l : ballot_lines) ballots.push_back(parse_ballot(l, candidates.size(), static_cast<int>(range)));
  std::vector<BallotGroup> pool;
  for (const auto& l : pool_lines) pool.push_back(parse_ballot(l, candidates.size(), static_cast<int>(range)));

  const bool has_instance = std::any_of(headers.begin(), headers.end(), [](const auto& kv) {
    return (kInstanceKeys.count(kv.first) != 0 && kv.first != "system") || kv.first == "pool";
  });

  ElectionFile file;
  Election full;
  try {
    full = Election(static_cast<int>(range), candidates, ballots);
  } catch (const ValidationError& e) {
    throw ParseError(0, e.what());
  }
  if (auto it = headers.find("system"); it != headers.end()) {
    try {
      file.system = parse_voting_system(it->second.value);
    } catch (const ValidationError& e) {
      throw ParseError(it->second.number, e.what());
    }
  }
  if (!has_instance) {
    file.election = std::move(full);
    return file;
  }

  auto need = [&](const char* key) -> const Line& {
    auto it = headers.find(key);
    if (it == headers.end()) throw ParseError(0, std::string("control instance needs a '") + key + ":' line");
    return it->second;
  };
  auto guarded = [](const Line& line, auto&& fn) {
    try {
      return fn();
    } catch (const ValidationError& e) {
      throw ParseError(line.number, e.what());
    }
  };

  ControlInstance inst;
  inst.base = full;
  if (file.system) inst.system = *file.system;
  const Line& action = need("action");
  inst.family = guarded(action, [&] { return parse_control_family(action.value); });
  const Line& goal = need("goal");
  inst.goal = guarded(goal, [&] { return parse_goal(goal.value); });
  const Line& dist = need("distinguished");
  inst.distinguished = dist.value;
  if (!full.index_of(dist.value)) throw ParseError(dist.number, "unknown candidate '" + dist.value + "'");
  if (auto it = headers.find("ties"); it != headers.end()) {
    inst.ties = guarded(it->second, [&] { return parse_tie_model(it->second.value); });
  }
  if (auto it = headers.find("limit"); it != headers.end()) {
    inst.limit = parse_int(it->second.value, it->second.number, "limit");
  }
  if (auto it = headers.find("spoilers"); it != headers.end()) {
    inst.spoilers = words(it->second.value);
    for (const auto& s : inst.spoilers) {
      if (!full.index_of(s)) throw ParseError(it->second.number, "unknown candidate '" + s + "'");
    }
  }
  inst.pool = std::move(pool);
  try {
    inst.validate();
  } catch (const ValidationError& e) {
    throw ParseError(0, e.what());
  }
  file.election = inst.spoilers.empty() ? full : project(full, inst.registered());
  file.instance = std::move(inst);
  return file;
}

Election parse_election(const std::string& text) { return parse_election_file(text).election; }

std::string serialize_election(const Election& election) {
  std::ostringstream out;
  out << "range: " << election.range() << '\n';
  out << "candidates: " << join(election.candidates()) << '\n';
  out << "ballots:\n";
  write_ballots(out, election.ballots());
  return out.str();
}

std::string serialize_instance(const ControlInstance& inst) {
  std::ostringstream out;
  out << "range: " << inst.base.range() << '\n';
  out << "candidates: " << join(inst.base.candidates()) << '\n';
  if (inst.system != VotingSystem::Normalized) out << "system: " << to_string(inst.system) << '\n';
  out << "action: " << to_string(inst.family) << '\n';
  out << "goal: " << to_string(inst.goal) << '\n';
  if (inst.ties) out << "ties: " << to_string(*inst.ties) << '\n';
  out << "distinguished: " << inst.distinguished << '\n';
  if (inst.limit) out << "limit: " << *inst.limit << '\n';
  if (!inst.spoilers.empty()) out << "spoilers: " << join(inst.spoilers) << '\n';
  out << "ballots:\n";
  write_ballots(out, inst.base.ballots());
  if (!inst.pool.empty()) {
    out << "pool:\n";
    write_ballots(out, canonical_ballots(inst.pool));
  }
  return out.str();
}

std::string serialize_election_file(const ElectionFile& file) {
  if (file.instance) return serialize_instance(*file.instance);
  std::string text = serialize_election(file.election);
  if (file.system == VotingSystem::Range) {
    const auto eol = text.find('\n', text.find("candidates:"));
    text.insert(eol + 1, "system: " + std::string(to_string(*file.system)) + "\n");
  }
  return text;
}

ParsedProblem parse_problem(const std::string& text) {
  std::optional<Line> elements_line;
  std::optional<Line> k_line;
  std::optional<std::string> problem;
  std::vector<Line> set_lines;
  for (const auto& line : tokenize(text)) {
    if (line.key == "elements") {
      if (elements_line) throw ParseError(line.number, "duplicate 'elements:' line");
      elements_line = line;
    } else if (line.key == "set") {
      set_lines.push_back(line);
    } else if (line.key == "k") {
      if (k_line) throw ParseError(line.number, "duplicate 'k:' line");
      k_line = line;
    } else if (line.key == "problem") {
      if (line.value != "hitting-set" && line.value != "x3c") {
        throw ParseError(line.number, "problem must be 'hitting-set' or 'x3c'");
      }
      problem = line.value;
    } else {
      throw ParseError(line.number, line.key.empty() ? "unexpected ballot line" : "unknown section '" + line.key + "'");
    }
  }
  if (!elements_line) throw ParseError(0, "missing 'elements:' header");
  const bool is_x3c = problem ? *problem == "x3c" : !k_line;
  if (!is_x3c && !k_line) throw ParseError(0, "hitting-set instance needs a 'k:' line");
  if (is_x3c && k_line) throw ParseError(k_line->number, "X3C instances take no 'k:' line");

  ParsedProblem out;
  const auto elements = words(elements_line->value);
  std::vector<std::vector<std::size_t>> sets;
  for (const auto& line : set_lines) {
    std::vector<std::size_t> set;
    for (const auto& name : words(line.value)) {
      auto it = std::find(elements.begin(), elements.end(), name);
      if (it == elements.end()) throw ParseError(line.number, "element '" + name + "' is not in the universe");
      set.push_back(static_cast<std::size_t>(it - elements.begin()));
    }
    if (set.empty()) throw ParseError(line.number, "empty set");
    const auto before = set.size();
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    if (set.size() != before) {
      out.warnings.push_back("line " + std::to_string(line.number) + ": duplicate elements in set collapsed");
    }
    if (is_x3c && set.size() != 3) throw ParseError(line.number, "X3C sets must have exactly three elements");
    sets.push_back(std::move(set));
  }
  try {
    if (is_x3c) {
      X3CInstance inst{elements, std::move(sets)};
      inst.validate();
      out.instance = std::move(inst);
    } else {
      HittingSetInstance inst{elements, std::move(sets), parse_int(k_line->value, k_line->number, "k")};
      inst.validate();
      out.instance = std::move(inst);
    }
  } catch (const ValidationError& e) {
    throw ParseError(0, e.what());
  }
  return out;
}

HittingSetInstance parse_hs_instance(const std::string& text) {
  auto parsed = parse_problem(text);
  if (auto* hs = std::get_if<HittingSetInstance>(&parsed.instance)) return *hs;
  throw ParseError(0, "expected a hitting-set instance");
}

X3CInstance parse_x3c_instance(const std::string& text) {
  auto parsed = parse_problem(text);
  if (auto* x = std::get_if<X3CInstance>(&parsed.instance)) return *x;
  throw ParseError(0, "expected an X3C instance");
}

namespace {

std::string serialize_sets(const std::vector<std::string>& elements, const std::vector<std::vector<std::size_t>>& sets) {
  std::string out = "elements: " + join(elements) + "\n";
  for (const auto& s : sets) {
    std::vector<std::string> names;
    for (auto e : s) names.push_back(elements.at(e));
    out += "set: " + join(names) + "\n";
  }
  return out;
}

}  // namespace

std::string serialize_problem(const HittingSetInstance& instance) {
  return serialize_sets(instance.elements, instance.sets) + "k: " + std::to_string(instance.k) + "\n";
}

std::string serialize_problem(const X3CInstance& instance) {
  return "problem: x3c\n" + serialize_sets(instance.elements, instance.sets);
}

std::vector<std::string> describe_witness(const ControlInstance& inst, const Witness& witness) {
  std::vector<std::string> out;
  auto ballot = [](const std::string& label, std::int64_t count, const BallotGroup& g) {
    std::string line = label + ": " + std::to_string(count) + " |";
    for (int s : g.scores) line += " " + std::to_string(s);
    return line;
  };
  switch (inst.family) {
    case ControlFamily::AddCandidates:
      out.push_back("add:" + (witness.candidates.empty() ? std::string() : " " + join(witness.candidates)));
      break;
    case ControlFamily::DeleteCandidates:
      out.push_back("delete:" + (witness.candidates.empty() ? std::string() : " " + join(witness.candidates)));
      break;
    case ControlFamily::PartitionCandidates:
    case ControlFamily::RunoffPartitionCandidates: {
      std::vector<std::string> second;
      for (const auto& c : inst.registered()) {
        if (std::find(witness.candidates.begin(), witness.candidates.end(), c) == witness.candidates.end()) {
          second.push_back(c);
        }
      }
      out.push_back("C1:" + (witness.candidates.empty() ? std::string() : " " + join(witness.candidates)));
      out.push_back("C2:" + (second.empty() ? std::string() : " " + join(second)));
      break;
    }
    case ControlFamily::AddVoters: {
      const auto pool = canonical_ballots(inst.pool);
      for (std::size_t i = 0; i < witness.counts.size() && i < pool.size(); ++i) {
        if (witness.counts[i] > 0) out.push_back(ballot("add-voters", witness.counts[i], pool[i]));
      }
      if (out.empty()) out.push_back("add-voters: none");
      break;
    }
    case ControlFamily::DeleteVoters:
    case ControlFamily::PartitionVoters: {
      const std::string label = inst.family == ControlFamily::DeleteVoters ? "delete-voters" : "V1";
      const auto& groups = inst.base.ballots();
      for (std::size_t i = 0; i < witness.counts.size() && i < groups.size(); ++i) {
        if (witness.counts[i] > 0) out.push_back(ballot(label, witness.counts[i], groups[i]));
      }
      if (out.empty()) out.push_back(label + ": none");
      break;
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace rangectl
