#include "score_table.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "rangectl/errors.hpp"

namespace rangectl::detail {

namespace {

constexpr std::size_t kMaxCandidates = 64;

// 0 when lcm(1..range) exceeds 2^64.
__int128 lcm_up_to(int range) {
  __int128 acc = 1;
  for (int d = 2; d <= range; ++d) {
    __int128 a = acc;
    __int128 b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    acc = acc / a * d;
    if (acc > (__int128{1} << 64)) return 0;
  }
  return acc;
}

}  // namespace

ScoreTable::ScoreTable(int range, std::size_t candidates, std::span<const BallotGroup> groups)
    : range_(range), candidates_(candidates), lcm_(lcm_up_to(range)) {
  if (candidates_ > kMaxCandidates) {
    throw ValidationError("solvers support at most 64 candidates, got " + std::to_string(candidates_));
  }
  scores_.reserve(groups.size() * candidates_);
  multiplicities_.reserve(groups.size());
  for (const auto& g : groups) {
    scores_.insert(scores_.end(), g.scores.begin(), g.scores.end());
    multiplicities_.push_back(g.multiplicity);
  }
}

void ScoreTable::accumulate(CandidateMask present, std::span<const std::int64_t> weights, VotingSystem system,
                            __int128* totals) const {
  std::array<std::uint8_t, kMaxCandidates> idx{};
  std::size_t count = 0;
  for (CandidateMask m = present; m != 0; m &= m - 1) idx[count++] = static_cast<std::uint8_t>(__builtin_ctzll(m));
  if (count == 0) return;

  for (std::size_t g = 0; g < multiplicities_.size(); ++g) {
    const std::int64_t w = weights[g];
    if (w == 0) continue;
    const int* row = scores_.data() + g * candidates_;
    if (system == VotingSystem::Range) {
      for (std::size_t j = 0; j < count; ++j) totals[idx[j]] += static_cast<__int128>(w) * row[idx[j]];
      continue;
    }
    int lo = row[idx[0]];
    int hi = lo;
    for (std::size_t j = 1; j < count; ++j) {
      lo = std::min(lo, row[idx[j]]);
      hi = std::max(hi, row[idx[j]]);
    }
    if (lo == hi) continue;
    if (lcm_ == 0) throw ValidationError("score range too large for the NRV solver engine");
    const __int128 factor = static_cast<__int128>(w) * range_ * (lcm_ / (hi - lo));
    for (std::size_t j = 0; j < count; ++j) totals[idx[j]] += factor * (row[idx[j]] - lo);
  }
}

CandidateMask ScoreTable::winners(CandidateMask present, std::span<const std::int64_t> weights,
                                  VotingSystem system) const {
  if (present == 0) return 0;
  std::array<__int128, kMaxCandidates> totals{};
  accumulate(present, weights, system, totals.data());
  bool first = true;
  __int128 best = 0;
  CandidateMask result = 0;
  for (CandidateMask m = present; m != 0; m &= m - 1) {
    const int i = __builtin_ctzll(m);
    if (first || totals[i] > best) {
      best = totals[i];
      result = bit(i);
      first = false;
    } else if (totals[i] == best) {
      result |= bit(i);
    }
  }
  return result;
}

std::vector<__int128> ScoreTable::scaled_totals(CandidateMask present, std::span<const std::int64_t> weights,
                                                VotingSystem system) const {
  std::array<__int128, kMaxCandidates> totals{};
  accumulate(present, weights, system, totals.data());
  return {totals.begin(), totals.begin() + static_cast<std::ptrdiff_t>(candidates_)};
}

}  // namespace rangectl::detail
