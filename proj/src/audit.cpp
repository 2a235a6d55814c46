#include "rangectl/audit.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "rangectl/errors.hpp"
#include "rangectl/io.hpp"
#include "rangectl/oracles.hpp"

namespace rangectl {

namespace {

using I = std::int64_t;
using Family = std::vector<std::vector<std::size_t>>;

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) { return mix(mix(seed) ^ mix(stream + 0x5851f42d4c957f2dULL)); }

// Portable uniform draw in [lo, hi] (std distributions differ between
// standard libraries).
I uniform(std::mt19937_64& rng, I lo, I hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<I>(rng());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return lo + static_cast<I>(x % span);
}

template <class T>
void shuffle(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[static_cast<std::size_t>(uniform(rng, 0, static_cast<I>(i) - 1))]);
  }
}

std::vector<std::size_t> random_triple(std::size_t universe, std::mt19937_64& rng) {
  std::vector<std::size_t> all(universe);
  std::iota(all.begin(), all.end(), 0);
  shuffle(all, rng);
  std::vector<std::size_t> t(all.begin(), all.begin() + 3);
  std::sort(t.begin(), t.end());
  return t;
}

bool covers(const Family& sets, std::size_t universe) {
  std::vector<bool> seen(universe, false);
  for (const auto& s : sets) {
    for (auto e : s) seen[e] = true;
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// Lexicographically smallest relabeling of the family, compared as a sorted
// list of sorted sets.
bool is_canonical(const Family& family, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end())) {
    Family mapped;
    for (const auto& s : family) {
      std::vector<std::size_t> t;
      for (auto e : s) t.push_back(perm[e]);
      std::sort(t.begin(), t.end());
      mapped.push_back(std::move(t));
    }
    std::sort(mapped.begin(), mapped.end());
    if (mapped < family) return false;
  }
  return true;
}

void multisets(const Family& pool, std::size_t size, const std::function<bool(const Family&)>& keep,
                 std::vector<Family>& out) {
  Family current;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (current.size() == size) {
      if (keep(current)) out.push_back(current);
      return;
    }
    for (std::size_t i = start; i < pool.size(); ++i) {
      current.push_back(pool[i]);
      rec(i);
      current.pop_back();
    }
  };
  rec(0);
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

}  // namespace

HittingSetInstance gen_random_hs(std::size_t n, std::size_t m, std::int64_t k, std::uint64_t seed, bool restricted) {
  if (n < 1 || n > 63) throw ValidationError("random hitting set needs 1 <= n <= 63");
  if (m < 1) throw ValidationError("random hitting set needs m >= 1");
  if (k < 1 || k > static_cast<I>(n)) throw ValidationError("random hitting set needs 1 <= k <= n");
  if (restricted && static_cast<I>(m) * (k + 1) + 3 > static_cast<I>(n) - k) {
    throw ValidationError("parameters cannot satisfy m(k+1)+3 <= n-k");
  }
  std::mt19937_64 rng(derive(seed, 0x4853));
  HittingSetInstance hs;
  hs.elements = default_elements(n);
  hs.k = k;
  const I full = static_cast<I>((std::uint64_t{1} << n) - 1);
  for (std::size_t i = 0; i < m; ++i) {
    const auto mask = static_cast<std::uint64_t>(uniform(rng, 1, full));
    std::vector<std::size_t> set;
    for (std::size_t e = 0; e < n; ++e) {
      if ((mask >> e) & 1U) set.push_back(e);
    }
    hs.sets.push_back(std::move(set));
  }
  hs.validate();
  return hs;
}

GeneratedX3C gen_random_x3c(std::size_t k, std::size_t set_count, std::uint64_t seed, std::optional<bool> plant) {
  if (k < 1 || 3 * k > 63) throw ValidationError("random X3C needs 1 <= k <= 21");
  if (set_count < k) throw ValidationError("random X3C needs set_count >= k");
  std::mt19937_64 rng(derive(seed, 0x5833));
  GeneratedX3C out;
  out.planted = plant.value_or((rng() & 1U) != 0);
  out.instance.elements = default_elements(3 * k);
  const std::size_t universe = 3 * k;
  if (out.planted) {
    std::vector<std::size_t> perm(universe);
    std::iota(perm.begin(), perm.end(), 0);
    shuffle(perm, rng);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::size_t> t(perm.begin() + static_cast<long>(3 * i), perm.begin() + static_cast<long>(3 * i + 3));
      std::sort(t.begin(), t.end());
      out.instance.sets.push_back(std::move(t));
    }
    for (std::size_t i = k; i < set_count; ++i) out.instance.sets.push_back(random_triple(universe, rng));
    shuffle(out.instance.sets, rng);
  } else {
    bool ok = false;
    for (int attempt = 0; attempt < 10000 && !ok; ++attempt) {
      out.instance.sets.clear();
      for (std::size_t i = 0; i < set_count; ++i) out.instance.sets.push_back(random_triple(universe, rng));
      ok = covers(out.instance.sets, universe);
    }
    if (!ok) throw ValidationError("could not draw a covering X3C family");
  }
  out.instance.validate_covering();
  return out;
}

Election gen_random_election(std::size_t candidates, std::size_t groups, int range, std::uint64_t seed) {
  if (candidates < 1 || range < 1) throw ValidationError("random election needs candidates >= 1 and range >= 1");
  std::mt19937_64 rng(derive(seed, 0x454c));
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= candidates; ++i) names.push_back("c" + std::to_string(i));
  std::vector<BallotGroup> ballots;
  for (std::size_t g = 0; g < groups; ++g) {
    BallotGroup b;
    for (std::size_t i = 0; i < candidates; ++i) b.scores.push_back(static_cast<int>(uniform(rng, 0, range)));
    b.multiplicity = uniform(rng, 1, 3);
    ballots.push_back(std::move(b));
  }
  return Election(range, names, ballots);
}

std::vector<Family> enumerate_hs_families(std::size_t n, std::size_t m) {
  if (n < 1 || n > 8) throw ValidationError("exhaustive hitting-set enumeration supports 1 <= n <= 8");
  Family subsets;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t e = 0; e < n; ++e) {
      if ((mask >> e) & 1U) s.push_back(e);
    }
    subsets.push_back(std::move(s));
  }
  std::sort(subsets.begin(), subsets.end());
  std::vector<Family> out;
  multisets(subsets, m, [&](const Family& f) { return is_canonical(f, n); }, out);
  return out;
}

std::vector<Family> enumerate_x3c_families(std::size_t k, std::size_t set_count) {
  const std::size_t universe = 3 * k;
  if (k < 1 || universe > 9) throw ValidationError("exhaustive X3C enumeration supports 1 <= k <= 3");
  Family triples;
  for (std::size_t a = 0; a < universe; ++a) {
    for (std::size_t b = a + 1; b < universe; ++b) {
      for (std::size_t c = b + 1; c < universe; ++c) triples.push_back({a, b, c});
    }
  }
  std::vector<Family> out;
  multisets(triples, set_count, [&](const Family& f) { return covers(f, universe) && is_canonical(f, universe); }, out);
  return out;
}

Rational evaluate_identity(const Election& election, const ScoreIdentity& identity) {
  const auto& sub = identity.subelection;
  Election voters = election;
  if (!sub.weights.empty()) {
    if (sub.weights.size() != election.ballots().size()) throw ValidationError("identity weights do not match groups");
    std::vector<BallotGroup> groups;
    for (std::size_t g = 0; g < sub.weights.size(); ++g) {
      if (sub.weights[g] < 0 || sub.weights[g] > election.ballots()[g].multiplicity) {
        throw ValidationError("identity weight out of range");
      }
      if (sub.weights[g] > 0) groups.push_back({election.ballots()[g].scores, sub.weights[g]});
    }
    voters = Election(election.range(), election.candidates(), groups);
  }
  const Tally t = tally(project(voters, sub.candidates), VotingSystem::Normalized);
  Rational lhs = 0;
  for (const auto& [cand, coeff] : identity.terms) lhs = lhs + Rational(coeff) * t.total(cand);
  if (!identity.minus_max_of.empty()) {
    Rational best = t.total(identity.minus_max_of.front());
    for (const auto& cand : identity.minus_max_of) best = std::max(best, t.total(cand));
    lhs = lhs - best;
  }
  return lhs;
}

std::vector<IdentityResult> check_score_identities(const GadgetOutput& gadget) {
  std::vector<IdentityResult> out;
  for (const auto& id : gadget.identities) {
    IdentityResult r;
    r.claim = id.describe();
    r.computed = evaluate_identity(gadget.election, id);
    r.expected = id.expected;
    r.must_hold = id.must_hold;
    switch (id.relation) {
      case Relation::Equal: r.holds = r.computed == r.expected; break;
      case Relation::AtMost: r.holds = r.computed <= r.expected; break;
      case Relation::AtLeast: r.holds = r.computed >= r.expected; break;
      case Relation::Greater: r.holds = r.computed > r.expected; break;
    }
    out.push_back(std::move(r));
  }
  return out;
}

Bounds parse_bounds(const std::string& text) {
  Bounds out;
  std::istringstream in(text);
  std::string term;
  auto number = [&](const std::string& s) -> I {
    std::size_t used = 0;
    I v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ParseError(0, "bad bound '" + term + "'");
    return v;
  };
  while (std::getline(in, term, ',')) {
    if (term.empty()) continue;
    std::size_t op = term.find_first_of("<=");
    if (op == std::string::npos || op == 0) throw ParseError(0, "bad bound '" + term + "'");
    const std::string var = term.substr(0, op);
    if (out.count(var) != 0) throw ParseError(0, "variable '" + var + "' bounded twice");
    if (term.compare(op, 2, "<=") == 0) {
      out[var] = {std::numeric_limits<I>::min(), number(term.substr(op + 2))};
    } else {
      const std::string rhs = term.substr(op + 1);
      const auto dots = rhs.find("..");
      if (dots == std::string::npos) {
        const I v = number(rhs);
        out[var] = {v, v};
      } else {
        out[var] = {number(rhs.substr(0, dots)), number(rhs.substr(dots + 2))};
      }
    }
    if (out[var].first > out[var].second) throw ParseError(0, "empty range for '" + var + "'");
  }
  return out;
}

std::string format_bounds(const Bounds& bounds) {
  std::vector<std::string> parts;
  for (const auto& [var, range] : bounds) {
    parts.push_back(range.first == range.second ? var + "=" + std::to_string(range.first)
                                                : var + "=" + std::to_string(range.first) + ".." +
                                                      std::to_string(range.second));
  }
  return join(parts, ",");
}

namespace {

enum class SourceKind { HittingSet, X3C, Deletion };

SourceKind source_kind(GadgetKind kind) {
  switch (kind) {
    case GadgetKind::X3cVoterPartitionTe: return SourceKind::X3C;
    case GadgetKind::DeletionToCandidatePartition: return SourceKind::Deletion;
    default: return SourceKind::HittingSet;
  }
}

Bounds default_bounds(GadgetKind kind) {
  switch (source_kind(kind)) {
    case SourceKind::X3C: return {{"k", {1, 1}}, {"s", {1, 2}}};
    case SourceKind::Deletion: return {{"c", {1, 4}}, {"g", {1, 4}}, {"l", {0, 2}}, {"r", {2, 2}}};
    case SourceKind::HittingSet: break;
  }
  if (kind == GadgetKind::RhsVoterPartitionTp) return {{"n", {6, 6}}, {"m", {1, 1}}, {"k", {1, 1}}};
  return {{"n", {1, 4}}, {"m", {1, 3}}, {"k", {1, 2}}};
}

bool hs_preconditions(GadgetKind kind, I n, I m, I k) {
  if (k < 1 || k > n || m < 1 || n < 1) return false;
  switch (kind) {
    case GadgetKind::HsCandidates: return m >= 2 && k < n;
    case GadgetKind::HsDestructiveCandidatePartition: return k < n;
    case GadgetKind::RhsVoterPartitionTp: return m * (k + 1) + 3 <= n - k;
    default: return true;
  }
}

std::string names_of(const std::vector<std::string>& elements, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(elements[i]);
  return join(out, ",");
}

std::string tally_line(const Election& e) {
  const Tally t = tally(e, VotingSystem::Normalized);
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < t.candidates.size(); ++i) parts.push_back(t.candidates[i] + "=" + t.totals[i].str());
  return join(parts, " ");
}

void run_solvers(const AuditSpec& spec, const GadgetOutput& gadget, InstanceRecord& rec) {
  SearchOptions opts;
  opts.budget = spec.budget;
  opts.threads = 1;
  for (const auto& li : gadget.instances) {
    const auto outcome = solve(li.instance, opts);
    SolverAnswer a;
    a.label = li.label;
    a.decision = outcome.decision;
    if (outcome.witness) a.witness = join(describe_witness(li.instance, *outcome.witness), "; ");
    a.explored = outcome.explored;
    rec.work += outcome.explored;
    rec.solvers.push_back(std::move(a));
  }
}

void finish(InstanceRecord& rec) {
  if (rec.solvers.empty()) {
    rec.status = RecordStatus::NotChecked;
    return;
  }
  if (!rec.oracle) {
    rec.status = RecordStatus::BudgetExceeded;
    return;
  }
  bool budget = false;
  for (const auto& s : rec.solvers) {
    if (s.decision == Decision::BudgetExceeded) {
      budget = true;
    } else if ((s.decision == Decision::Yes) != *rec.oracle) {
      rec.status = RecordStatus::Disagree;
      return;
    }
  }
  rec.status = budget ? RecordStatus::BudgetExceeded : RecordStatus::Agree;
}

GadgetOutput build_hs_gadget(GadgetKind kind, const HittingSetInstance& hs,
                             const std::optional<std::vector<std::size_t>>& cert) {
  switch (kind) {
    case GadgetKind::HsCandidates: return gadget_hs_candidates(hs, cert);
    case GadgetKind::HsDeleteConstructive: return gadget_hs_delete_constructive(hs, cert);
    case GadgetKind::RhsVoterPartitionTp: return gadget_rhs_voter_partition_tp(hs);
    case GadgetKind::HsDestructiveCandidatePartition: return gadget_hs_destructive_candidate_partition(hs, cert);
    default: throw ValidationError("not a hitting-set gadget");
  }
}

InstanceRecord audit_hs(const AuditSpec& spec, const HittingSetInstance& hs) {
  InstanceRecord rec;
  rec.encoding = hs.encode();
  rec.n = static_cast<I>(hs.n());
  rec.m = static_cast<I>(hs.m());
  rec.k = hs.k;
  const auto answer = solve_hitting_set(hs);
  rec.oracle = answer.yes;
  if (answer.witness) rec.oracle_witness = names_of(hs.elements, *answer.witness);
  const auto gadget = build_hs_gadget(spec.gadget, hs, answer.witness);
  rec.gadget_tally = tally_line(gadget.election);
  if (spec.checks.identities) rec.identities = check_score_identities(gadget);
  if (spec.checks.equivalence) run_solvers(spec, gadget, rec);
  if (spec.checks.replay && spec.gadget == GadgetKind::RhsVoterPartitionTp && answer.witness) {
    Witness w;
    w.counts = tp_explicit_partition(gadget, hs, *answer.witness);
    rec.replay = replay_witness(gadget.instances.front().instance, w);
  }
  finish(rec);
  return rec;
}

InstanceRecord audit_x3c(const AuditSpec& spec, const X3CInstance& x3c) {
  InstanceRecord rec;
  rec.encoding = x3c.encode();
  rec.n = static_cast<I>(x3c.elements.size());
  rec.m = static_cast<I>(x3c.sets.size());
  rec.k = static_cast<I>(x3c.k());
  const auto answer = solve_x3c(x3c);
  rec.oracle = answer.yes;
  if (answer.witness) {
    std::vector<std::string> sets;
    for (auto idx : *answer.witness) sets.push_back("{" + names_of(x3c.elements, x3c.sets[idx]) + "}");
    rec.oracle_witness = join(sets, "");
  }
  const auto gadget = gadget_x3c_voter_partition_te(x3c, answer.witness);
  rec.gadget_tally = tally_line(gadget.election);
  if (spec.checks.identities) rec.identities = check_score_identities(gadget);
  if (spec.checks.equivalence) run_solvers(spec, gadget, rec);
  finish(rec);
  return rec;
}

struct DeletionSource {
  Election election;
  std::string distinguished;
  I limit = 0;
};

DeletionSource decode_deletion_source(const std::string& encoding) {
  std::map<std::string, std::string> fields;
  std::istringstream in(encoding);
  std::string token;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw ParseError(0, "malformed field '" + token + "'");
    fields[token.substr(0, eq)] = token.substr(eq + 1);
  }
  for (const char* key : {"r", "C", "w", "l", "V"}) {
    if (fields.count(key) == 0) throw ParseError(0, std::string("missing field '") + key + "'");
  }
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, sep)) {
      if (!cur.empty()) out.push_back(cur);
    }
    return out;
  };
  std::vector<BallotGroup> groups;
  for (const auto& g : split(fields["V"], ';')) {
    const auto colon = g.find(':');
    if (colon == std::string::npos) throw ParseError(0, "malformed ballot '" + g + "'");
    BallotGroup b;
    b.multiplicity = std::stoll(g.substr(0, colon));
    for (const auto& s : split(g.substr(colon + 1), ',')) b.scores.push_back(std::stoi(s));
    groups.push_back(std::move(b));
  }
  DeletionSource src;
  src.election = Election(std::stoi(fields["r"]), split(fields["C"], ','), groups);
  src.distinguished = fields["w"];
  src.limit = std::stoll(fields["l"]);
  src.election.require_index(src.distinguished);
  return src;
}

InstanceRecord audit_deletion(const AuditSpec& spec, const DeletionSource& src) {
  InstanceRecord rec;
  rec.encoding = encode_deletion_source(src.election, src.distinguished, src.limit);
  rec.n = static_cast<I>(src.election.candidate_count());
  rec.m = static_cast<I>(src.election.ballots().size());
  rec.k = src.limit;
  ControlInstance source;
  source.base = src.election;
  source.family = ControlFamily::DeleteCandidates;
  source.goal = Goal::Constructive;
  source.distinguished = src.distinguished;
  source.limit = src.limit;
  SearchOptions opts;
  opts.budget = spec.budget;
  const auto oracle = solve(source, opts);
  rec.work += oracle.explored;
  if (oracle.decision != Decision::BudgetExceeded) rec.oracle = oracle.decision == Decision::Yes;
  if (oracle.witness) rec.oracle_witness = join(describe_witness(source, *oracle.witness), "; ");
  const auto gadget = gadget_deletion_to_candidate_partition(src.election, src.distinguished, src.limit);
  rec.gadget_tally = tally_line(gadget.election);
  if (spec.checks.identities) rec.identities = check_score_identities(gadget);
  if (spec.checks.equivalence) run_solvers(spec, gadget, rec);
  finish(rec);
  return rec;
}

std::vector<std::string> source_encodings(const AuditSpec& spec, const Bounds& b) {
  std::vector<std::string> out;
  auto range = [&](const char* var) { return b.at(var); };
  const auto kind = source_kind(spec.gadget);
  if (spec.mode == SourceMode::Exhaustive) {
    if (kind == SourceKind::Deletion) throw ValidationError("the deletion-to-partition audit supports random mode only");
    if (kind == SourceKind::X3C) {
      for (I k = std::max<I>(1, range("k").first); k <= range("k").second; ++k) {
        for (I s = std::max<I>(k, range("s").first); s <= range("s").second; ++s) {
          for (auto& fam : enumerate_x3c_families(static_cast<std::size_t>(k), static_cast<std::size_t>(s))) {
            X3CInstance x{default_elements(static_cast<std::size_t>(3 * k)), std::move(fam)};
            out.push_back(x.encode());
          }
        }
      }
      return out;
    }
    for (I n = std::max<I>(1, range("n").first); n <= range("n").second; ++n) {
      for (I m = std::max<I>(1, range("m").first); m <= range("m").second; ++m) {
        for (I k = std::max<I>(1, range("k").first); k <= range("k").second; ++k) {
          if (!hs_preconditions(spec.gadget, n, m, k)) continue;
          for (auto& fam : enumerate_hs_families(static_cast<std::size_t>(n), static_cast<std::size_t>(m))) {
            HittingSetInstance hs{default_elements(static_cast<std::size_t>(n)), std::move(fam), k};
            out.push_back(hs.encode());
          }
        }
      }
    }
    return out;
  }

  for (std::size_t t = 0; t < spec.trials; ++t) {
    std::mt19937_64 rng(derive(spec.seed, t));
    auto draw = [&](const char* var, I floor) {
      const auto [lo, hi] = range(var);
      return uniform(rng, std::max(lo, floor), hi);
    };
    if (kind == SourceKind::HittingSet) {
      I n = 0, m = 0, k = 0;
      int attempts = 0;
      do {
        if (++attempts > 10000) throw ValidationError("no parameters within the bounds meet the gadget preconditions");
        n = draw("n", 1);
        m = draw("m", 1);
        k = draw("k", 1);
      } while (!hs_preconditions(spec.gadget, n, m, k));
      out.push_back(gen_random_hs(static_cast<std::size_t>(n), static_cast<std::size_t>(m), k, rng(),
                                  spec.gadget == GadgetKind::RhsVoterPartitionTp)
                        .encode());
    } else if (kind == SourceKind::X3C) {
      I k = 0, s = 0;
      int attempts = 0;
      do {
        if (++attempts > 10000) throw ValidationError("no parameters within the bounds satisfy s >= k");
        k = draw("k", 1);
        s = draw("s", 1);
      } while (s < k);
      out.push_back(gen_random_x3c(static_cast<std::size_t>(k), static_cast<std::size_t>(s), rng()).instance.encode());
    } else {
      const I c = draw("c", 1);
      const I g = draw("g", 0);
      const I l = draw("l", 0);
      const I r = draw("r", 1);
      const Election e = gen_random_election(static_cast<std::size_t>(c), static_cast<std::size_t>(g),
                                             static_cast<int>(r), rng());
      const auto w = e.candidates()[static_cast<std::size_t>(uniform(rng, 0, c - 1))];
      out.push_back(encode_deletion_source(e, w, l));
    }
  }
  return out;
}

std::string checks_text(const AuditChecks& c) {
  std::vector<std::string> parts;
  if (c.equivalence) parts.push_back("equivalence");
  if (c.identities) parts.push_back("identities");
  if (c.replay) parts.push_back("replay");
  return parts.empty() ? "none" : join(parts, ",");
}

}  // namespace

std::string_view to_string(RecordStatus status) {
  switch (status) {
    case RecordStatus::Agree: return "agree";
    case RecordStatus::Disagree: return "disagree";
    case RecordStatus::BudgetExceeded: return "budget-exceeded";
    case RecordStatus::NotChecked: return "not-checked";
  }
  return "?";
}

bool InstanceRecord::has_failure() const {
  if (status == RecordStatus::Disagree) return true;
  if (replay && !*replay) return true;
  return std::any_of(identities.begin(), identities.end(), [](const auto& r) { return r.must_hold && !r.holds; });
}

Bounds effective_bounds(const AuditSpec& spec) {
  Bounds b = default_bounds(spec.gadget);
  for (const auto& [var, range] : spec.bounds) {
    auto it = b.find(var);
    if (it == b.end()) {
      throw ValidationError("variable '" + var + "' does not apply to gadget " + std::string(to_string(spec.gadget)));
    }
    it->second.second = range.second;
    if (range.first != std::numeric_limits<I>::min()) it->second.first = range.first;
  }
  for (const auto& [var, range] : b) {
    if (range.first > range.second) throw ValidationError("empty range for '" + var + "'");
  }
  return b;
}

std::string encode_deletion_source(const Election& source, const std::string& distinguished, std::int64_t limit) {
  std::ostringstream out;
  out << "r=" << source.range() << " C=" << join(source.candidates(), ",") << " w=" << distinguished
      << " l=" << limit << " V=";
  for (std::size_t g = 0; g < source.ballots().size(); ++g) {
    const auto& b = source.ballots()[g];
    out << (g ? ";" : "") << b.multiplicity << ":";
    for (std::size_t i = 0; i < b.scores.size(); ++i) out << (i ? "," : "") << b.scores[i];
  }
  return out.str();
}

InstanceRecord audit_instance(const AuditSpec& spec, const std::string& encoding) {
  switch (source_kind(spec.gadget)) {
    case SourceKind::HittingSet: return audit_hs(spec, HittingSetInstance::decode(encoding));
    case SourceKind::X3C: return audit_x3c(spec, X3CInstance::decode(encoding));
    case SourceKind::Deletion: return audit_deletion(spec, decode_deletion_source(encoding));
  }
  throw std::logic_error("unreachable");
}

bool replays_identically(const AuditSpec& spec, const InstanceRecord& record) {
  return audit_instance(spec, record.encoding) == record;
}

AuditReport audit_gadget(const AuditSpec& spec) {
  AuditReport report;
  report.spec = spec;
  report.spec.bounds = effective_bounds(spec);
  const auto encodings = source_encodings(spec, report.spec.bounds);
  report.records.resize(encodings.size());

  const unsigned workers = std::max(1U, std::min<unsigned>(spec.threads, static_cast<unsigned>(encodings.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned id) {
    try {
      for (std::size_t i = next++; i < encodings.size(); i = next++) report.records[i] = audit_instance(spec, encodings[i]);
    } catch (...) {
      errors[id] = std::current_exception();
      next = encodings.size();
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  for (const auto& rec : report.records) {
    switch (rec.status) {
      case RecordStatus::Agree: ++report.agree; break;
      case RecordStatus::Disagree: ++report.disagree; break;
      case RecordStatus::BudgetExceeded: ++report.budget_exceeded; break;
      case RecordStatus::NotChecked: break;
    }
    for (const auto& id : rec.identities) {
      if (!id.holds) {
        ++report.identity_failures;
        if (id.must_hold) ++report.required_identity_failures;
      }
    }
    if (rec.replay && !*rec.replay) ++report.replay_failures;
    if (rec.has_failure()) report.counterexamples.push_back(rec);
  }
  report.agreement = report.disagree == 0;
  std::sort(report.counterexamples.begin(), report.counterexamples.end(), [](const auto& a, const auto& b) {
    return std::tie(a.n, a.m, a.k, a.encoding) < std::tie(b.n, b.m, b.k, b.encoding);
  });
  return report;
}

std::string record_line(const InstanceRecord& rec) {
  std::ostringstream out;
  out << rec.encoding << " | oracle=";
  if (rec.oracle) {
    out << (*rec.oracle ? "YES" : "NO");
    if (!rec.oracle_witness.empty()) out << "[" << rec.oracle_witness << "]";
  } else {
    out << "BUDGET-EXCEEDED";
  }
  for (const auto& s : rec.solvers) {
    out << " | " << s.label << "=" << to_string(s.decision);
    if (!s.witness.empty()) out << "[" << s.witness << "]";
    out << " explored=" << s.explored;
  }
  if (!rec.identities.empty()) {
    const auto held = std::count_if(rec.identities.begin(), rec.identities.end(), [](const auto& r) { return r.holds; });
    out << " | identities=" << held << "/" << rec.identities.size();
  }
  if (rec.replay) out << " | replay=" << (*rec.replay ? "defeated" : "FAILED");
  out << " | status=" << to_string(rec.status) << " work=" << rec.work;
  return out.str();
}

std::string report_text(const AuditReport& report) {
  std::ostringstream out;
  const auto& spec = report.spec;
  out << "audit gadget=" << to_string(spec.gadget)
      << " mode=" << (spec.mode == SourceMode::Exhaustive ? "exhaustive" : "random")
      << " bounds=" << format_bounds(spec.bounds) << " seed=" << spec.seed << " trials=" << spec.trials
      << " budget=" << spec.budget << " checks=" << checks_text(spec.checks) << '\n';
  for (const auto& rec : report.records) out << "instance " << record_line(rec) << '\n';
  out << "summary instances=" << report.records.size() << " agree=" << report.agree << " disagree=" << report.disagree
      << " budget-exceeded=" << report.budget_exceeded << " identity-failures=" << report.identity_failures
      << " required-identity-failures=" << report.required_identity_failures
      << " replay-failures=" << report.replay_failures << " agreement=" << (report.agreement ? "true" : "false")
      << '\n';

  std::map<std::string, std::pair<std::size_t, std::size_t>> held;
  for (const auto& rec : report.records) {
    for (const auto& id : rec.identities) {
      auto& [ok, total] = held[(id.must_hold ? "" : "(audit) ") + id.claim];
      ok += id.holds ? 1 : 0;
      ++total;
    }
  }
  for (const auto& [claim, counts] : held) {
    out << "identity " << claim << " held " << counts.first << "/" << counts.second << '\n';
  }
  for (const auto& rec : report.counterexamples) {
    out << "counterexample " << record_line(rec) << '\n';
    out << "  tally (C,V) " << rec.gadget_tally << '\n';
    for (const auto& id : rec.identities) {
      if (!id.holds) {
        out << "  identity-failed " << id.claim << " computed=" << id.computed.str() << " expected=" << id.expected.str()
            << (id.must_hold ? "" : " (audit)") << '\n';
      }
    }
  }
  return out.str();
}

std::string report_json_lines(const AuditReport& report) {
  std::string out;
  for (const auto& rec : report.records) {
    nlohmann::json j;
    j["gadget"] = std::string(to_string(report.spec.gadget));
    j["instance"] = rec.encoding;
    j["key"] = {rec.n, rec.m, rec.k};
    j["oracle"] = rec.oracle ? nlohmann::json(*rec.oracle ? "YES" : "NO") : nlohmann::json(nullptr);
    j["oracle_witness"] = rec.oracle_witness;
    j["solver"] = nlohmann::json::array();
    for (const auto& s : rec.solvers) {
      j["solver"].push_back(
          {{"label", s.label}, {"answer", std::string(to_string(s.decision))}, {"witness", s.witness}, {"explored", s.explored}});
    }
    j["identities"] = nlohmann::json::array();
    for (const auto& id : rec.identities) {
      j["identities"].push_back({{"claim", id.claim},
                                 {"computed", id.computed.str()},
                                 {"expected", id.expected.str()},
                                 {"holds", id.holds},
                                 {"must_hold", id.must_hold}});
    }
    j["replay"] = rec.replay ? nlohmann::json(*rec.replay) : nlohmann::json(nullptr);
    j["tally"] = rec.gadget_tally;
    j["status"] = std::string(to_string(rec.status));
    j["counterexample"] = rec.has_failure();
    j["work"] = rec.work;
    out += j.dump() + '\n';
  }
  return out;
}

}  // namespace rangectl
