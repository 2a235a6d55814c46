#pragma once

// Test-only oracles. They deliberately share nothing with the library's
// tally or search code: voters are expanded one by one, fractions are plain
// reduced int64 pairs, and every action is enumerated naively.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rangectl/control.hpp"
#include "rangectl/election.hpp"

namespace oracle {

struct Frac {
  std::int64_t p = 0, q = 1;

  Frac() = default;
  Frac(std::int64_t a, std::int64_t b = 1) : p(a), q(b) {
    if (q < 0) {
      p = -p;
      q = -q;
    }
    const auto g = std::gcd(p < 0 ? -p : p, q);
    if (g > 1) {
      p /= g;
      q /= g;
    }
  }
  friend Frac operator+(Frac a, Frac b) { return Frac(a.p * b.q + b.p * a.q, a.q * b.q); }
  friend bool operator==(Frac a, Frac b) { return a.p == b.p && a.q == b.q; }
  friend bool operator<(Frac a, Frac b) { return a.p * b.q < b.p * a.q; }
};

inline std::vector<std::vector<int>> expand(const std::vector<rangectl::BallotGroup>& groups) {
  std::vector<std::vector<int>> voters;
  for (const auto& g : groups) {
    for (std::int64_t i = 0; i < g.multiplicity; ++i) voters.push_back(g.scores);
  }
  return voters;
}

// Totals over the candidate indices `cands` (in the given order).
inline std::vector<Frac> totals(const std::vector<std::vector<int>>& voters, const std::vector<std::size_t>& cands,
                                int range, bool normalized) {
  std::vector<Frac> out(cands.size());
  for (const auto& v : voters) {
    if (cands.empty()) break;
    int lo = v[cands[0]], hi = v[cands[0]];
    for (auto c : cands) {
      lo = std::min(lo, v[c]);
      hi = std::max(hi, v[c]);
    }
    if (normalized && lo == hi) continue;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      out[i] = out[i] + (normalized ? Frac(static_cast<std::int64_t>(range) * (v[cands[i]] - lo), hi - lo)
                                    : Frac(v[cands[i]]));
    }
  }
  return out;
}

inline std::vector<std::size_t> winners(const std::vector<std::vector<int>>& voters,
                                        const std::vector<std::size_t>& cands, int range, bool normalized) {
  const auto t = totals(voters, cands, range, normalized);
  std::vector<std::size_t> out;
  if (cands.empty()) return out;
  Frac best = t[0];
  for (const auto& x : t) best = best < x ? x : best;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (t[i] == best) out.push_back(cands[i]);
  }
  return out;
}

inline std::vector<std::size_t> survivors(const std::vector<std::vector<int>>& voters,
                                          const std::vector<std::size_t>& cands, int range, bool normalized,
                                          rangectl::TieModel ties) {
  auto w = winners(voters, cands, range, normalized);
  if (ties == rangectl::TieModel::Eliminate && w.size() != 1) return {};
  return w;
}

inline std::vector<std::size_t> from_mask(std::uint64_t mask, const std::vector<std::size_t>& pool) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if ((mask >> i) & 1U) out.push_back(pool[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::size_t> unite(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

// Brute-force decision over fully expanded voters. Exponential; keep
// instances tiny (<= ~14 voters for voter families).
inline bool decide(const rangectl::ControlInstance& inst) {
  using rangectl::ControlFamily;
  const auto& e = inst.base;
  const int range = e.range();
  const bool nrv = inst.system == rangectl::VotingSystem::Normalized;
  const auto voters = expand(e.ballots());
  const std::size_t w = *e.index_of(inst.distinguished);
  std::vector<std::size_t> registered, spoilers;
  for (std::size_t i = 0; i < e.candidate_count(); ++i) {
    const bool spoiler = std::find(inst.spoilers.begin(), inst.spoilers.end(), e.candidates()[i]) != inst.spoilers.end();
    (spoiler ? spoilers : registered).push_back(i);
  }
  auto goal = [&](const std::vector<std::vector<int>>& vs, const std::vector<std::size_t>& cands) {
    const auto win = winners(vs, cands, range, nrv);
    const bool w_unique = win.size() == 1 && win[0] == w;
    return inst.goal == rangectl::Goal::Constructive ? w_unique : !w_unique;
  };
  const auto limit = static_cast<std::size_t>(std::max<std::int64_t>(0, inst.limit.value_or(0)));
  switch (inst.family) {
    case ControlFamily::AddCandidates:
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << spoilers.size()); ++m) {
        const auto add = from_mask(m, spoilers);
        if (add.size() <= limit && goal(voters, unite(registered, add))) return true;
      }
      return false;
    case ControlFamily::DeleteCandidates: {
      std::vector<std::size_t> deletable;
      for (auto c : registered) {
        if (c != w) deletable.push_back(c);
      }
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << deletable.size()); ++m) {
        const auto del = from_mask(m, deletable);
        if (del.size() > limit) continue;
        std::vector<std::size_t> rest;
        for (auto c : registered) {
          if (std::find(del.begin(), del.end(), c) == del.end()) rest.push_back(c);
        }
        if (goal(voters, rest)) return true;
      }
      return false;
    }
    case ControlFamily::AddVoters: {
      const auto pool = expand(inst.pool);
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << pool.size()); ++m) {
        if (static_cast<std::size_t>(__builtin_popcountll(m)) > limit) continue;
        auto vs = voters;
        for (std::size_t i = 0; i < pool.size(); ++i) {
          if ((m >> i) & 1U) vs.push_back(pool[i]);
        }
        if (goal(vs, registered)) return true;
      }
      return false;
    }
    case ControlFamily::DeleteVoters:
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << voters.size()); ++m) {
        if (static_cast<std::size_t>(__builtin_popcountll(m)) > limit) continue;
        std::vector<std::vector<int>> vs;
        for (std::size_t i = 0; i < voters.size(); ++i) {
          if (((m >> i) & 1U) == 0) vs.push_back(voters[i]);
        }
        if (goal(vs, registered)) return true;
      }
      return false;
    case ControlFamily::PartitionCandidates:
    case ControlFamily::RunoffPartitionCandidates:
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << registered.size()); ++m) {
        const auto c1 = from_mask(m, registered);
        std::vector<std::size_t> c2;
        for (auto c : registered) {
          if (std::find(c1.begin(), c1.end(), c) == c1.end()) c2.push_back(c);
        }
        const auto d1 = survivors(voters, c1, range, nrv, *inst.ties);
        const auto d2 = inst.family == ControlFamily::PartitionCandidates ? c2
                                                                          : survivors(voters, c2, range, nrv, *inst.ties);
        if (goal(voters, unite(d1, d2))) return true;
      }
      return false;
    case ControlFamily::PartitionVoters:
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << voters.size()); ++m) {
        std::vector<std::vector<int>> v1, v2;
        for (std::size_t i = 0; i < voters.size(); ++i) ((m >> i) & 1U ? v1 : v2).push_back(voters[i]);
        const auto d1 = survivors(v1, registered, range, nrv, *inst.ties);
        const auto d2 = survivors(v2, registered, range, nrv, *inst.ties);
        if (goal(voters, unite(d1, d2))) return true;
      }
      return false;
  }
  return false;
}

// Random election with small multiplicities.
inline rangectl::Election random_election(std::mt19937_64& rng, std::size_t max_candidates, std::size_t max_groups,
                                          int range, std::int64_t max_mult = 3, std::size_t min_candidates = 1) {
  auto pick = [&](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  const auto c = static_cast<std::size_t>(pick(static_cast<std::int64_t>(min_candidates),
                                               static_cast<std::int64_t>(max_candidates)));
  const auto g = static_cast<std::size_t>(pick(0, static_cast<std::int64_t>(max_groups)));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < c; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<rangectl::BallotGroup> groups;
  for (std::size_t j = 0; j < g; ++j) {
    rangectl::BallotGroup b;
    for (std::size_t i = 0; i < c; ++i) b.scores.push_back(static_cast<int>(pick(0, range)));
    b.multiplicity = pick(1, max_mult);
    groups.push_back(b);
  }
  return rangectl::Election(range, names, groups);
}

// Random well-formed control instance of the given family over a tiny
// election (voter families stay under ~12 expanded voters).
inline rangectl::ControlInstance random_instance(std::mt19937_64& rng, rangectl::ControlFamily family) {
  using namespace rangectl;
  const bool voter_family =
      family == ControlFamily::AddVoters || family == ControlFamily::DeleteVoters || family == ControlFamily::PartitionVoters;
  const int range = 1 + static_cast<int>(rng() % 3);
  ControlInstance inst;
  inst.base = random_election(rng, 4, voter_family ? 4 : 5, range, voter_family ? 2 : 3);
  inst.system = rng() % 2 ? VotingSystem::Normalized : VotingSystem::Range;
  inst.family = family;
  inst.goal = rng() % 2 ? Goal::Constructive : Goal::Destructive;
  const auto& cands = inst.base.candidates();
  if (family == ControlFamily::AddCandidates && cands.size() > 1) {
    for (std::size_t i = 1; i < cands.size(); ++i) {
      if (rng() % 2) inst.spoilers.push_back(cands[i]);
    }
  }
  inst.distinguished = cands[0];
  if (has_limit(family)) inst.limit = static_cast<std::int64_t>(rng() % 4);
  if (is_partition_family(family)) inst.ties = rng() % 2 ? TieModel::Promote : TieModel::Eliminate;
  if (family == ControlFamily::AddVoters) {
    const auto extra = random_election(rng, cands.size(), 3, range, 2, cands.size());
    for (const auto& g : extra.ballots()) inst.pool.push_back(g);
  }
  return inst;
}

}  // namespace oracle
