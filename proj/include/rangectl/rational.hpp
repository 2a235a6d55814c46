#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace rangectl {

/// Exact rational number with a positive denominator, always stored in
/// lowest terms. Arithmetic is carried out in 128-bit intermediates and
/// throws std::overflow_error when the reduced result does not fit.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  /// Reduces a 128-bit fraction; throws std::overflow_error if it cannot be
  /// represented.
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

  /// `p` when integral, otherwise `p/q`.
  std::string str() const;

  /// Inverse of str(); accepts `p` or `p/q` with optional leading minus.
  static Rational parse(const std::string& text);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace rangectl
