#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rangectl/problems.hpp"

namespace rangectl {

struct HittingSetAnswer {
  bool yes = false;
  /// Lexicographically first hitting set of minimum size (element indices,
  /// ascending). Present only when yes.
  std::optional<std::vector<std::size_t>> witness;
  /// Minimum hitting-set size over the whole family (always defined: the
  /// sets are nonempty).
  std::size_t minimum_size = 0;
};

/// Branch and bound over elements with a disjoint-unhit-sets lower bound.
/// Supports n <= 64.
HittingSetAnswer solve_hitting_set(const HittingSetInstance& instance);

struct X3CAnswer {
  bool yes = false;
  /// Indices into `sets`, ascending, of the first cover found when
  /// branching on the lowest uncovered element.
  std::optional<std::vector<std::size_t>> witness;
};

X3CAnswer solve_x3c(const X3CInstance& instance);

/// m(k+1) + 3 <= n - k.
bool validate_restricted_hs(const HittingSetInstance& instance);

bool is_hitting_set(const HittingSetInstance& instance, const std::vector<std::size_t>& chosen);
bool is_exact_cover(const X3CInstance& instance, const std::vector<std::size_t>& chosen_sets);

}  // namespace rangectl
