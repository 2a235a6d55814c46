#include "rangectl/gadgets.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "rangectl/errors.hpp"

namespace rangectl {

std::string_view to_string(GadgetKind kind) {
  switch (kind) {
    case GadgetKind::HsCandidates: return "hs-candidates";
    case GadgetKind::HsDeleteConstructive: return "hs-delete-constructive";
    case GadgetKind::RhsVoterPartitionTp: return "rhs-voter-partition-tp";
    case GadgetKind::X3cVoterPartitionTe: return "x3c-voter-partition-te";
    case GadgetKind::DeletionToCandidatePartition: return "deletion-to-candidate-partition";
    case GadgetKind::HsDestructiveCandidatePartition: return "hs-destructive-candidate-partition";
  }
  return "?";
}

std::vector<GadgetKind> all_gadget_kinds() {
  return {GadgetKind::HsCandidates,        GadgetKind::HsDeleteConstructive,
          GadgetKind::RhsVoterPartitionTp, GadgetKind::X3cVoterPartitionTe,
          GadgetKind::DeletionToCandidatePartition, GadgetKind::HsDestructiveCandidatePartition};
}

GadgetKind parse_gadget_kind(std::string_view text) {
  for (auto kind : all_gadget_kinds()) {
    if (to_string(kind) == text) return kind;
  }
  throw ValidationError("unknown gadget '" + std::string(text) + "'");
}

std::string_view to_string(Relation relation) {
  switch (relation) {
    case Relation::Equal: return "=";
    case Relation::AtMost: return "<=";
    case Relation::AtLeast: return ">=";
    case Relation::Greater: return ">";
  }
  return "?";
}

std::string ScoreIdentity::describe() const {
  std::ostringstream out;
  out << subelection.label << ": ";
  bool first = true;
  for (const auto& [cand, coeff] : terms) {
    if (coeff < 0) {
      out << (first ? "-" : " - ");
    } else if (!first) {
      out << " + ";
    }
    if (coeff != 1 && coeff != -1) out << (coeff < 0 ? -coeff : coeff) << "*";
    out << cand;
    first = false;
  }
  if (!minus_max_of.empty()) {
    out << " - max(";
    for (std::size_t i = 0; i < minus_max_of.size(); ++i) out << (i ? "," : "") << minus_max_of[i];
    out << ")";
  }
  out << " " << to_string(relation) << " " << formula;
  return out.str();
}

std::optional<std::size_t> find_group(const Election& election, const std::vector<int>& scores) {
  const auto& groups = election.ballots();
  auto it = std::lower_bound(groups.begin(), groups.end(), scores,
                             [](const BallotGroup& g, const std::vector<int>& s) { return g.scores < s; });
  if (it == groups.end() || it->scores != scores) return std::nullopt;
  return static_cast<std::size_t>(it - groups.begin());
}

namespace {

using I = std::int64_t;

std::string fresh_name(const std::string& preferred, const std::vector<std::string>& taken) {
  std::string name = preferred;
  while (std::find(taken.begin(), taken.end(), name) != taken.end()) name += "_";
  return name;
}

class Builder {
 public:
  Builder(int range, std::vector<std::string> names) : range_(range), names_(std::move(names)) {}

  std::vector<int> blank() const { return std::vector<int>(names_.size(), 0); }

  std::size_t at(const std::string& name) const {
    return static_cast<std::size_t>(std::find(names_.begin(), names_.end(), name) - names_.begin());
  }

  void add(I count, std::vector<int> row) {
    if (count > 0) rows_.push_back({std::move(row), count});
  }

  Election build() const { return Election(range_, names_, rows_); }

 private:
  int range_;
  std::vector<std::string> names_;
  std::vector<BallotGroup> rows_;
};

ScoreIdentity total_is(const Subelection& sub, const std::string& candidate, Relation relation, Rational expected,
                       std::string formula, bool must_hold) {
  ScoreIdentity id;
  id.subelection = sub;
  id.terms = {{candidate, 1}};
  id.relation = relation;
  id.expected = expected;
  id.formula = std::move(formula);
  id.must_hold = must_hold;
  return id;
}

Subelection whole(const Election& e, std::string label) { return {std::move(label), e.candidates(), {}}; }

std::vector<std::string> names(const HittingSetInstance& hs, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(hs.elements[i]);
  return out;
}

std::string set_label(const std::vector<std::string>& specials, const std::vector<std::string>& rest) {
  std::string out = "({";
  bool first = true;
  for (const auto* part : {&specials, &rest}) {
    for (const auto& x : *part) {
      out += (first ? "" : ",") + x;
      first = false;
    }
  }
  return out + "},V)";
}

ControlInstance make_instance(const Election& e, ControlFamily family, Goal goal, const std::string& distinguished) {
  ControlInstance inst;
  inst.base = e;
  inst.system = VotingSystem::Normalized;
  inst.family = family;
  inst.goal = goal;
  inst.distinguished = distinguished;
  return inst;
}

void require_hs(const HittingSetInstance& hs) {
  hs.validate();
  for (const auto& s : hs.sets) {
    if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw ValidationError("hitting set instance is not normalized");
    }
  }
}

void check_certificate(const HittingSetInstance& hs, const std::vector<std::size_t>& cert) {
  std::set<std::size_t> seen;
  for (auto e : cert) {
    if (e >= hs.n() || !seen.insert(e).second) throw ValidationError("malformed hitting-set certificate");
  }
  if (static_cast<I>(cert.size()) > hs.k) throw ValidationError("certificate larger than k");
  for (const auto& s : hs.sets) {
    if (std::none_of(s.begin(), s.end(), [&](std::size_t e) { return seen.count(e) != 0; })) {
      throw ValidationError("certificate is not a hitting set");
    }
  }
}

bool contains(const std::vector<std::size_t>& set, std::size_t e) {
  return std::find(set.begin(), set.end(), e) != set.end();
}

}  // namespace

GadgetOutput gadget_hs_candidates(const HittingSetInstance& hs, const std::optional<std::vector<std::size_t>>& certificate) {
  require_hs(hs);
  const I n = static_cast<I>(hs.n());
  const I m = static_cast<I>(hs.m());
  const I k = hs.k;
  if (m < 2) throw ValidationError("hs-candidates gadget needs m >= 2 (c must beat w in ({c,w},V))");
  if (k >= n) throw ValidationError("hs-candidates gadget needs k < n");

  const std::string c = fresh_name("c", hs.elements);
  const std::string w = fresh_name("w", hs.elements);
  std::vector<std::string> all = {c, w};
  all.insert(all.end(), hs.elements.begin(), hs.elements.end());
  Builder b(2, all);

  auto row = b.blank();
  row[b.at(c)] = 2;
  b.add(2 * m * (k + 1) + 4 * n, row);
  row = b.blank();
  row[b.at(w)] = 2;
  b.add(3 * m * (k + 1) + 2 * k + 1, row);
  for (const auto& e : hs.elements) {
    row = b.blank();
    row[b.at(e)] = 2;
    row[b.at(w)] = 1;
    b.add(4, row);
  }
  for (const auto& s : hs.sets) {
    row = b.blank();
    for (auto e : s) row[b.at(hs.elements[e])] = 2;
    row[b.at(c)] = 1;
    b.add(2 * (k + 1), row);
  }

  GadgetOutput out;
  out.kind = GadgetKind::HsCandidates;
  out.election = b.build();
  out.claim = Claim::HittingSetWithinBudget;
  out.claim_text = "each instance is yes iff a hitting set of size <= k exists";

  Subelection pair{"({c,w},V)", {c, w}, {}};
  out.identities.push_back(total_is(pair, c, Relation::Equal, 8 * m * (k + 1) + 8 * n, "8m(k+1)+8n", true));
  out.identities.push_back(total_is(pair, w, Relation::Equal, 6 * m * (k + 1) + 8 * n + 4 * k + 2,
                                    "6m(k+1)+8n+4k+2", true));
  Subelection full = whole(out.election, "(C,V)");
  out.identities.push_back(total_is(full, c, Relation::Equal, 6 * m * (k + 1) + 8 * n, "6m(k+1)+8n", true));
  out.identities.push_back(total_is(full, w, Relation::Equal, 6 * m * (k + 1) + 4 * n + 4 * k + 2,
                                    "6m(k+1)+4n+4k+2", true));
  for (const auto& e : hs.elements) {
    out.identities.push_back(total_is(full, e, Relation::AtMost, 4 * m * (k + 1) + 8, "4m(k+1)+8", true));
  }
  if (certificate) {
    check_certificate(hs, *certificate);
    const auto chosen = names(hs, *certificate);
    Subelection sub{set_label({c, w}, chosen), {c, w}, {}};
    sub.candidates.insert(sub.candidates.end(), chosen.begin(), chosen.end());
    out.identities.push_back(total_is(sub, c, Relation::Equal, 6 * m * (k + 1) + 8 * n, "6m(k+1)+8n", true));
    out.identities.push_back(total_is(sub, w, Relation::AtLeast, 6 * m * (k + 1) + 8 * n + 2, "6m(k+1)+8n+2", true));
    for (const auto& e : chosen) {
      out.identities.push_back(total_is(sub, e, Relation::AtMost, 4 * m * (k + 1) + 8, "4m(k+1)+8", true));
    }
    ScoreIdentity lead;
    lead.subelection = sub;
    lead.terms = {{w, 1}};
    lead.minus_max_of = {c};
    lead.minus_max_of.insert(lead.minus_max_of.end(), chosen.begin(), chosen.end());
    lead.relation = Relation::AtLeast;
    lead.expected = 2;
    lead.formula = "2";
    out.identities.push_back(lead);
  }

  auto add_c = make_instance(out.election, ControlFamily::AddCandidates, Goal::Constructive, w);
  add_c.spoilers = hs.elements;
  add_c.limit = k;
  auto add_d = add_c;
  add_d.goal = Goal::Destructive;
  add_d.distinguished = c;
  auto del_d = make_instance(out.election, ControlFamily::DeleteCandidates, Goal::Destructive, c);
  del_d.limit = n - k;
  out.instances = {{"add-constructive-w", add_c}, {"add-destructive-c", add_d}, {"delete-destructive-c", del_d}};
  return out;
}

GadgetOutput gadget_hs_delete_constructive(const HittingSetInstance& hs,
                                           const std::optional<std::vector<std::size_t>>& certificate) {
  require_hs(hs);
  const I n = static_cast<I>(hs.n());
  const I m = static_cast<I>(hs.m());
  const I k = hs.k;
  const std::string w = fresh_name("w", hs.elements);
  std::vector<std::string> all = {w};
  all.insert(all.end(), hs.elements.begin(), hs.elements.end());
  Builder b(2, all);

  auto row = b.blank();
  for (const auto& e : hs.elements) row[b.at(e)] = 2;
  b.add(n + k, row);
  row = b.blank();
  row[b.at(w)] = 2;
  b.add(3 + 2 * m * k, row);
  for (const auto& s : hs.sets) {
    row = b.blank();
    for (std::size_t e = 0; e < hs.n(); ++e) row[b.at(hs.elements[e])] = contains(s, e) ? 2 : 1;
    b.add(4 * k + 1, row);
  }
  for (const auto& s : hs.sets) {
    row = b.blank();
    for (std::size_t e = 0; e < hs.n(); ++e) row[b.at(hs.elements[e])] = contains(s, e) ? 1 : 2;
    row[b.at(w)] = 2;
    b.add(4 * k + 1, row);
  }
  for (const auto& e : hs.elements) {
    row = b.blank();
    row[b.at(e)] = 2;
    row[b.at(w)] = 1;
    b.add(2 * n - k, row);
  }

  GadgetOutput out;
  out.kind = GadgetKind::HsDeleteConstructive;
  out.election = b.build();
  out.claim = Claim::HittingSetWithinBudget;
  out.claim_text = "w can be made the unique winner by deleting <= n-k candidates iff a hitting set of size <= k exists";

  if (certificate) {
    check_certificate(hs, *certificate);
    // Pad to exactly k elements, smallest indices first.
    std::vector<std::size_t> padded = *certificate;
    for (std::size_t e = 0; static_cast<I>(padded.size()) < k && e < hs.n(); ++e) {
      if (!contains(padded, e)) padded.push_back(e);
    }
    std::sort(padded.begin(), padded.end());
    const auto chosen = names(hs, padded);
    Subelection sub{set_label({w}, chosen), {w}, {}};
    sub.candidates.insert(sub.candidates.end(), chosen.begin(), chosen.end());
    for (const auto& e : chosen) {
      out.identities.push_back(
          total_is(sub, e, Relation::Equal, 12 * m * k + 4 * n - 2 * k + 4, "12mk+4n-2k+4", false));
    }
    out.identities.push_back(
        total_is(sub, w, Relation::Equal, 12 * m * k + 4 * n - 2 * k + 6, "12mk+4n-2k+6", false));
  }

  auto del = make_instance(out.election, ControlFamily::DeleteCandidates, Goal::Constructive, w);
  del.limit = n - k;
  out.instances = {{"delete-constructive-w", del}};
  return out;
}

GadgetOutput gadget_rhs_voter_partition_tp(const HittingSetInstance& hs) {
  require_hs(hs);
  const I n = static_cast<I>(hs.n());
  const I m = static_cast<I>(hs.m());
  const I k = hs.k;
  if (m * (k + 1) + 3 > n - k) throw ValidationError("restricted hitting set needs m(k+1)+3 <= n-k");

  const std::string c = fresh_name("c", hs.elements);
  const std::string w = fresh_name("w", hs.elements);
  std::vector<std::string> all = {c, w};
  all.insert(all.end(), hs.elements.begin(), hs.elements.end());
  Builder b(2, all);

  auto row = b.blank();
  row[b.at(c)] = 2;
  b.add(2 * m * (k + 1) + 4 * n, row);
  row = b.blank();
  row[b.at(w)] = 2;
  b.add(3 * m * (k + 1) + 2 * k, row);
  for (const auto& e : hs.elements) {
    row = b.blank();
    row[b.at(e)] = 2;
    row[b.at(w)] = 1;
    b.add(4, row);
  }
  // One block per set, scoring all of the set's elements (as in the
  // add/delete-candidates construction).
  for (const auto& s : hs.sets) {
    row = b.blank();
    for (auto e : s) row[b.at(hs.elements[e])] = 2;
    row[b.at(c)] = 1;
    b.add(2 * (k + 1), row);
  }
  for (const auto& e : hs.elements) {
    row = b.blank();
    row[b.at(e)] = 2;
    b.add(1, row);
  }

  GadgetOutput out;
  out.kind = GadgetKind::RhsVoterPartitionTp;
  out.election = b.build();
  out.claim = Claim::HittingSetWithinBudget;
  out.claim_text = "c can be denied unique victory by partitioning voters (TP) iff a hitting set of size <= k exists";

  Subelection full = whole(out.election, "(C,V)");
  out.identities.push_back(total_is(full, c, Relation::Equal, 6 * m * (k + 1) + 8 * n, "6m(k+1)+8n", true));
  out.identities.push_back(total_is(full, w, Relation::Equal, 6 * m * (k + 1) + 4 * k + 4 * n, "6m(k+1)+4k+4n", true));
  for (const auto& e : hs.elements) {
    out.identities.push_back(total_is(full, e, Relation::AtMost, 4 * m * (k + 1) + 10, "4m(k+1)+10", true));
  }
  ScoreIdentity margin;
  margin.subelection = full;
  margin.terms = {{c, 1}, {w, -1}};
  margin.minus_max_of = hs.elements;
  margin.relation = Relation::AtLeast;
  margin.expected = 2;
  margin.formula = "2";
  out.identities.push_back(margin);

  auto inst = make_instance(out.election, ControlFamily::PartitionVoters, Goal::Destructive, c);
  inst.ties = TieModel::Promote;
  out.instances = {{"partition-voters-destructive-c-tp", inst}};
  return out;
}

std::vector<std::int64_t> tp_explicit_partition(const GadgetOutput& gadget, const HittingSetInstance& hs,
                                                const std::vector<std::size_t>& hitting_set) {
  if (gadget.kind != GadgetKind::RhsVoterPartitionTp) throw ValidationError("not a TP voter-partition gadget");
  check_certificate(hs, hitting_set);
  const Election& e = gadget.election;
  std::vector<std::int64_t> first(e.ballots().size(), 0);
  auto take_one = [&](const std::string& candidate) {
    std::vector<int> scores(e.candidate_count(), 0);
    scores[e.require_index(candidate)] = 2;
    auto g = find_group(e, scores);
    if (!g) throw ValidationError("gadget has no single-candidate voter for '" + candidate + "'");
    first[*g] += 1;
  };
  for (auto idx : hitting_set) take_one(hs.elements[idx]);
  take_one(gadget.instances.front().instance.base.candidates()[1]);  // w
  return first;
}

GadgetOutput gadget_x3c_voter_partition_te(const X3CInstance& x3c, const std::optional<std::vector<std::size_t>>& cover) {
  x3c.validate_covering();
  const I n = static_cast<I>(x3c.sets.size());
  const I k = static_cast<I>(x3c.k());
  if (k > n) throw ValidationError("X3C gadget needs 1 <= k <= |S|");

  const std::string c = fresh_name("c", x3c.elements);
  const std::string w = fresh_name("w", x3c.elements);
  std::vector<std::string> all = {c, w};
  all.insert(all.end(), x3c.elements.begin(), x3c.elements.end());
  Builder b(4, all);

  auto cover_row = [&](const std::vector<std::size_t>& s) {
    auto row = b.blank();
    for (std::size_t e = 0; e < x3c.elements.size(); ++e) {
      if (!contains(s, e)) row[b.at(x3c.elements[e])] = 4;
    }
    row[b.at(c)] = 2;
    return row;
  };
  for (const auto& s : x3c.sets) b.add(1, cover_row(s));
  auto row = b.blank();
  for (const auto& e : x3c.elements) row[b.at(e)] = 4;
  row[b.at(c)] = 2;
  b.add(2 * n, row);
  auto helper_row = b.blank();
  helper_row[b.at(w)] = 4;
  helper_row[b.at(c)] = 2;
  b.add(k - 1, helper_row);
  for (const auto& e : x3c.elements) {
    row = b.blank();
    for (const auto& other : x3c.elements) row[b.at(other)] = 1;
    row[b.at(e)] = 4;
    row[b.at(c)] = 1;
    b.add(1, row);
  }
  row = b.blank();
  row[b.at(w)] = 4;
  b.add(2 * k + 3 * n + 1, row);

  GadgetOutput out;
  out.kind = GadgetKind::X3cVoterPartitionTe;
  out.election = b.build();
  out.claim = Claim::ExactCoverExists;
  out.claim_text = "w can be denied unique victory by partitioning voters (TE) iff an exact cover exists";

  Subelection final_round{"({c,w},V)", {c, w}, {}};
  auto paper = total_is(final_round, c, Relation::Equal, 12 * n + 14 * k - 2, "12n+14k-2", false);
  auto alt = total_is(final_round, c, Relation::Equal, 12 * n + 12 * k, "12n+12k", false);
  out.identities.push_back(paper);
  out.identities.push_back(alt);
  out.identities.push_back(total_is(final_round, w, Relation::Equal, 12 * n + 12 * k, "12n+12k", false));

  if (cover) {
    if (!std::is_sorted(cover->begin(), cover->end())) throw ValidationError("cover indices must be ascending");
    std::vector<std::int64_t> v1(out.election.ballots().size(), 0);
    for (auto idx : *cover) {
      if (idx >= x3c.sets.size()) throw ValidationError("cover index out of range");
      v1[*find_group(out.election, cover_row(x3c.sets[idx]))] += 1;
    }
    if (k > 1) v1[*find_group(out.election, helper_row)] = k - 1;
    Subelection side{"(C,V1)", out.election.candidates(), v1};
    out.identities.push_back(total_is(side, c, Relation::Equal, 4 * k - 2, "4k-2", false));
    for (const auto& e : x3c.elements) {
      out.identities.push_back(total_is(side, e, Relation::Equal, 4 * k - 4, "4k-4", false));
    }
    out.identities.push_back(total_is(side, w, Relation::Equal, 4 * k - 4, "4k-4", false));
    std::vector<std::int64_t> v2;
    for (std::size_t g = 0; g < v1.size(); ++g) v2.push_back(out.election.ballots()[g].multiplicity - v1[g]);
    ScoreIdentity w_wins;
    w_wins.subelection = {"(C,V2)", out.election.candidates(), v2};
    w_wins.terms = {{w, 1}};
    w_wins.minus_max_of = {c};
    w_wins.minus_max_of.insert(w_wins.minus_max_of.end(), x3c.elements.begin(), x3c.elements.end());
    w_wins.relation = Relation::Greater;
    w_wins.expected = 0;
    w_wins.formula = "0";
    w_wins.must_hold = false;
    out.identities.push_back(w_wins);
  }

  auto inst = make_instance(out.election, ControlFamily::PartitionVoters, Goal::Destructive, w);
  inst.ties = TieModel::Eliminate;
  out.instances = {{"partition-voters-destructive-w-te", inst}};
  return out;
}

GadgetOutput gadget_deletion_to_candidate_partition(const Election& source, const std::string& distinguished,
                                                    std::int64_t limit) {
  if (source.candidate_count() == 0) throw ValidationError("source election has no candidates");
  source.require_index(distinguished);
  if (limit < 0) throw ValidationError("deletion limit must be >= 0");
  const I r = source.range();
  const I n = source.voter_count();
  const I m = static_cast<I>(source.candidate_count());
  const I k = std::min<I>(limit, m - 1);
  const I spare = m - k - 1;

  const std::string a = fresh_name("a", source.candidates());
  const std::string bb = fresh_name("b", source.candidates());
  std::vector<std::string> all = source.candidates();
  all.push_back(a);
  all.push_back(bb);
  Builder b(static_cast<int>(2 * r), all);
  const auto& w = distinguished;

  for (const auto& g : source.ballots()) {
    auto row = b.blank();
    for (std::size_t i = 0; i < g.scores.size(); ++i) row[i] = 2 * g.scores[i];
    b.add(g.multiplicity, row);
  }
  for (const auto& cand : source.candidates()) {
    auto row = b.blank();
    row[b.at(cand)] = static_cast<int>(2 * r);
    row[b.at(a)] = static_cast<int>(r);
    b.add(2 * n, row);
  }
  for (const auto& cand : source.candidates()) {
    if (cand == w) continue;
    auto row = b.blank();
    row[b.at(cand)] = static_cast<int>(2 * r);
    b.add(3 * n * m, row);
  }
  auto row = b.blank();
  row[b.at(w)] = static_cast<int>(2 * r);
  row[b.at(a)] = static_cast<int>(r);
  b.add(2 * n * m, row);
  row = b.blank();
  row[b.at(w)] = static_cast<int>(2 * r);
  b.add(n * m, row);
  row = b.blank();
  for (const auto& cand : source.candidates()) row[b.at(cand)] = static_cast<int>(2 * r);
  b.add(spare * n, row);
  row = b.blank();
  row[b.at(a)] = static_cast<int>(2 * r);
  b.add(2 * n + 1, row);
  row = b.blank();
  row[b.at(bb)] = static_cast<int>(2 * r);
  b.add(3 * n + 3 * n * m + spare * n + 2, row);

  GadgetOutput out;
  out.kind = GadgetKind::DeletionToCandidatePartition;
  out.election = b.build();
  out.claim = Claim::SourceDeletionYes;
  out.claim_text = "w wins some (runoff) partition of candidates iff w can be made the unique winner of the source by "
                   "deleting <= limit candidates";

  const Tally source_tally = tally(source, VotingSystem::Normalized);
  const Rational b_total = 6 * n * r + 6 * n * m * r + 2 * spare * n * r + 4 * r;
  const std::string b_formula = "6nr+6nmr+2(m-k-1)nr+4r";
  const Rational base_share = 4 * n * r + 6 * n * m * r + 2 * spare * n * r;
  auto support = [&](const std::string& cand) { return base_share + Rational(2) * source_tally.total(cand); };

  Subelection full{"(C',V')", out.election.candidates(), {}};
  out.identities.push_back(total_is(full, a, Relation::Equal, 4 * n * m * r + 4 * n * r + 2 * r, "4nmr+4nr+2r", false));
  out.identities.push_back(total_is(full, bb, Relation::Equal, b_total, b_formula, false));
  for (const auto& cand : source.candidates()) {
    out.identities.push_back(
        total_is(full, cand, Relation::Equal, support(cand), "4nr+6nmr+2(m-k-1)nr+2s0(" + cand + ")", false));
  }
  ScoreIdentity b_wins;
  b_wins.subelection = full;
  b_wins.terms = {{bb, 1}};
  for (const auto& cand : out.election.candidates()) {
    if (cand != bb) b_wins.minus_max_of.push_back(cand);
  }
  b_wins.relation = Relation::Greater;
  b_wins.expected = 0;
  b_wins.formula = "0";
  b_wins.must_hold = false;
  out.identities.push_back(b_wins);

  Subelection aw{"({a,w},V')", {w, a}, {}};
  out.identities.push_back(total_is(aw, a, Relation::Equal, 4 * n * r + 6 * n * m * r + 2, "4nr+6nmr+2", false));
  out.identities.push_back(total_is(aw, w, Relation::Equal, support(w), "4nr+6nmr+2(m-k-1)nr+2s0(w)", false));
  Subelection bw{"({b,w},V')", {w, bb}, {}};
  out.identities.push_back(total_is(bw, bb, Relation::Equal, b_total, b_formula, false));
  out.identities.push_back(total_is(bw, w, Relation::Equal, support(w), "4nr+6nmr+2(m-k-1)nr+2s0(w)", false));

  for (auto family : {ControlFamily::PartitionCandidates, ControlFamily::RunoffPartitionCandidates}) {
    for (auto ties : {TieModel::Eliminate, TieModel::Promote}) {
      auto inst = make_instance(out.election, family, Goal::Constructive, w);
      inst.ties = ties;
      out.instances.push_back({std::string(family == ControlFamily::PartitionCandidates ? "partition" : "runoff") +
                                   "-constructive-w-" + (ties == TieModel::Promote ? "tp" : "te"),
                               inst});
    }
  }
  return out;
}

GadgetOutput gadget_hs_destructive_candidate_partition(const HittingSetInstance& hs,
                                                       const std::optional<std::vector<std::size_t>>& certificate) {
  require_hs(hs);
  const I n = static_cast<I>(hs.n());
  const I m = static_cast<I>(hs.m());
  const I k = hs.k;
  if (k >= n) throw ValidationError("destructive candidate-partition gadget needs k < n");

  const std::string w = fresh_name("w", hs.elements);
  std::vector<std::string> all = {w};
  all.insert(all.end(), hs.elements.begin(), hs.elements.end());
  Builder b(2, all);

  for (const auto& s : hs.sets) {
    auto row = b.blank();
    for (auto e : s) row[b.at(hs.elements[e])] = 2;
    row[b.at(w)] = 1;
    b.add(4 * (k + 1), row);
  }
  for (const auto& s : hs.sets) {
    auto row = b.blank();
    for (std::size_t e = 0; e < hs.n(); ++e) {
      if (!contains(s, e)) row[b.at(hs.elements[e])] = 2;
    }
    b.add(4 * (k + 1), row);
  }
  for (const auto& e : hs.elements) {
    auto row = b.blank();
    for (const auto& other : hs.elements) row[b.at(other)] = 1;
    row[b.at(e)] = 2;
    b.add(4, row);
  }
  auto row = b.blank();
  row[b.at(w)] = 2;
  b.add(2 * (k + 1) * m + 4 * n - 2 * k + 1, row);

  GadgetOutput out;
  out.kind = GadgetKind::HsDestructiveCandidatePartition;
  out.election = b.build();
  out.claim = Claim::HittingSetWithinBudget;
  out.claim_text = "w can be denied unique victory by (runoff) partition of candidates iff a hitting set of size <= k "
                   "exists";

  Subelection full = whole(out.election, "(C,V)");
  out.identities.push_back(
      total_is(full, w, Relation::Equal, 8 * (k + 1) * m + 8 * n - 4 * k + 2, "8(k+1)m+8n-4k+2", true));
  for (const auto& e : hs.elements) {
    out.identities.push_back(total_is(full, e, Relation::Equal, 8 * (k + 1) * m + 4 * n + 4, "8(k+1)m+4n+4", true));
  }
  if (certificate) {
    check_certificate(hs, *certificate);
    const auto chosen = names(hs, *certificate);
    const I l = static_cast<I>(chosen.size());
    Subelection sub{set_label({w}, chosen), {w}, {}};
    sub.candidates.insert(sub.candidates.end(), chosen.begin(), chosen.end());
    for (const auto& e : chosen) {
      out.identities.push_back(
          total_is(sub, e, Relation::Equal, 8 * (k + 1) * m + 8 * n - 4 * l + 4, "8(k+1)m+8n-4l+4", true));
    }
  }

  for (auto family : {ControlFamily::PartitionCandidates, ControlFamily::RunoffPartitionCandidates}) {
    for (auto ties : {TieModel::Eliminate, TieModel::Promote}) {
      auto inst = make_instance(out.election, family, Goal::Destructive, w);
      inst.ties = ties;
      out.instances.push_back({std::string(family == ControlFamily::PartitionCandidates ? "partition" : "runoff") +
                                   "-destructive-w-" + (ties == TieModel::Promote ? "tp" : "te"),
                               inst});
    }
  }
  return out;
}

}  // namespace rangectl
