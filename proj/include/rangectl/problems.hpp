#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rangectl {

/// Hitting Set: universe `elements` (n), family `sets` of nonempty subsets
/// given as sorted, duplicate-free element indices (m), budget `k`.
struct HittingSetInstance {
  std::vector<std::string> elements;
  std::vector<std::vector<std::size_t>> sets;
  std::int64_t k = 1;

  std::size_t n() const { return elements.size(); }
  std::size_t m() const { return sets.size(); }

  /// Throws ValidationError unless 1 <= k <= n, m >= 1, every set is
  /// nonempty and references known elements.
  void validate() const;

  /// Sorts and deduplicates each set's indices in place.
  void normalize();

  /// Compact one-line encoding, e.g. `n=2 m=2 k=1 S={b1}{b1,b2}`.
  std::string encode() const;
  static HittingSetInstance decode(const std::string& text);

  friend bool operator==(const HittingSetInstance&, const HittingSetInstance&) = default;
};

/// Exact Cover by 3-Sets: |elements| = 3k, every set has three distinct
/// elements.
struct X3CInstance {
  std::vector<std::string> elements;
  std::vector<std::vector<std::size_t>> sets;

  std::size_t k() const { return elements.size() / 3; }

  /// Throws ValidationError unless |elements| = 3k with k >= 1, every set
  /// is a 3-subset of the elements, and k <= |sets|.
  void validate() const;

  /// Additionally requires every element to appear in some set (the
  /// voter-partition gadget's precondition).
  void validate_covering() const;

  void normalize();

  std::string encode() const;
  static X3CInstance decode(const std::string& text);

  friend bool operator==(const X3CInstance&, const X3CInstance&) = default;
};

/// Default element names b1..bn.
std::vector<std::string> default_elements(std::size_t n);

}  // namespace rangectl
