#include "rangectl/oracles.hpp"

#include <algorithm>
#include <cstdint>

#include "rangectl/errors.hpp"

namespace rangectl {

namespace {

using Mask = std::uint64_t;

std::vector<Mask> set_masks(const std::vector<std::vector<std::size_t>>& sets) {
  std::vector<Mask> out;
  out.reserve(sets.size());
  for (const auto& s : sets) {
    Mask m = 0;
    for (auto e : s) m |= Mask{1} << e;
    out.push_back(m);
  }
  return out;
}

// Greedy packing of pairwise disjoint unhit sets, each restricted to
// `allowed`; any hitting set needs one element per packed set. Returns
// SIZE_MAX when some unhit set has no allowed element.
std::size_t packing_bound(const std::vector<Mask>& sets, const std::vector<bool>& hit, Mask allowed) {
  Mask used = 0;
  std::size_t bound = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (hit[i]) continue;
    const Mask s = sets[i] & allowed;
    if (s == 0) return SIZE_MAX;
    if ((s & used) == 0) {
      used |= s;
      ++bound;
    }
  }
  return bound;
}

class HittingSearch {
 public:
  HittingSearch(std::size_t n, std::vector<Mask> sets) : n_(n), sets_(std::move(sets)), hit_(sets_.size(), false) {}

  std::size_t minimum() {
    best_ = std::min(n_, sets_.size());
    branch(0);
    return best_;
  }

  // Lexicographically first hitting set of exactly `size` elements.
  std::vector<std::size_t> first_of_size(std::size_t size) {
    target_ = size;
    chosen_.clear();
    std::fill(hit_.begin(), hit_.end(), false);
    if (!lex(0)) throw std::logic_error("no hitting set of the minimum size");
    return chosen_;
  }

 private:
  Mask all_from(std::size_t start) const {
    if (start >= 64) return 0;
    const Mask all = n_ == 64 ? ~Mask{0} : ((Mask{1} << n_) - 1);
    return all & ~((Mask{1} << start) - 1);
  }

  std::vector<std::size_t> mark(std::size_t e) {
    std::vector<std::size_t> changed;
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      if (!hit_[i] && ((sets_[i] >> e) & 1U)) {
        hit_[i] = true;
        changed.push_back(i);
      }
    }
    return changed;
  }

  void unmark(const std::vector<std::size_t>& changed) {
    for (auto i : changed) hit_[i] = false;
  }

  void branch(std::size_t count) {
    auto first_unhit = std::find(hit_.begin(), hit_.end(), false);
    if (first_unhit == hit_.end()) {
      best_ = std::min(best_, count);
      return;
    }
    if (count + packing_bound(sets_, hit_, all_from(0)) >= best_) return;
    const Mask s = sets_[static_cast<std::size_t>(first_unhit - hit_.begin())];
    for (Mask m = s; m != 0; m &= m - 1) {
      auto changed = mark(static_cast<std::size_t>(__builtin_ctzll(m)));
      branch(count + 1);
      unmark(changed);
    }
  }

  bool lex(std::size_t start) {
    const std::size_t remaining = target_ - chosen_.size();
    if (remaining == 0) return std::find(hit_.begin(), hit_.end(), false) == hit_.end();
    const std::size_t bound = packing_bound(sets_, hit_, all_from(start));
    if (bound == SIZE_MAX || bound > remaining) return false;
    for (std::size_t e = start; e + remaining <= n_; ++e) {
      auto changed = mark(e);
      chosen_.push_back(e);
      if (lex(e + 1)) return true;
      chosen_.pop_back();
      unmark(changed);
    }
    return false;
  }

  std::size_t n_;
  std::vector<Mask> sets_;
  std::vector<bool> hit_;
  std::vector<std::size_t> chosen_;
  std::size_t best_ = 0;
  std::size_t target_ = 0;
};

}  // namespace

bool is_hitting_set(const HittingSetInstance& instance, const std::vector<std::size_t>& chosen) {
  return std::all_of(instance.sets.begin(), instance.sets.end(), [&](const auto& s) {
    return std::any_of(s.begin(), s.end(),
                       [&](std::size_t e) { return std::find(chosen.begin(), chosen.end(), e) != chosen.end(); });
  });
}

HittingSetAnswer solve_hitting_set(const HittingSetInstance& instance) {
  instance.validate();
  if (instance.n() > 64) throw ValidationError("hitting set oracle supports n <= 64");
  HittingSearch search(instance.n(), set_masks(instance.sets));
  HittingSetAnswer answer;
  answer.minimum_size = search.minimum();
  answer.yes = static_cast<std::int64_t>(answer.minimum_size) <= instance.k;
  if (answer.yes) answer.witness = search.first_of_size(answer.minimum_size);
  return answer;
}

bool validate_restricted_hs(const HittingSetInstance& instance) {
  const auto m = static_cast<std::int64_t>(instance.m());
  const auto n = static_cast<std::int64_t>(instance.n());
  return m * (instance.k + 1) + 3 <= n - instance.k;
}

bool is_exact_cover(const X3CInstance& instance, const std::vector<std::size_t>& chosen_sets) {
  std::vector<int> count(instance.elements.size(), 0);
  for (auto idx : chosen_sets) {
    if (idx >= instance.sets.size()) return false;
    for (auto e : instance.sets[idx]) ++count[e];
  }
  return std::all_of(count.begin(), count.end(), [](int c) { return c == 1; });
}

namespace {

bool cover(const std::vector<Mask>& sets, Mask universe, Mask covered, std::vector<std::size_t>& chosen) {
  if (covered == universe) return true;
  const auto e = static_cast<unsigned>(__builtin_ctzll(universe & ~covered));
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (((sets[i] >> e) & 1U) == 0 || (sets[i] & covered) != 0) continue;
    chosen.push_back(i);
    if (cover(sets, universe, covered | sets[i], chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

X3CAnswer solve_x3c(const X3CInstance& instance) {
  instance.validate();
  if (instance.elements.size() > 63) throw ValidationError("X3C oracle supports at most 63 elements");
  const Mask universe = (Mask{1} << instance.elements.size()) - 1;
  std::vector<std::size_t> chosen;
  X3CAnswer answer;
  if (cover(set_masks(instance.sets), universe, 0, chosen)) {
    std::sort(chosen.begin(), chosen.end());
    answer.yes = true;
    answer.witness = chosen;
  }
  return answer;
}

}  // namespace rangectl
