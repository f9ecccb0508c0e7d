#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

namespace lpd {

/// Exact k/2, k an integer. Used for the integer orders m and the
/// odd-half-integer degrees n - 1/2 at which derivatives are evaluated.
class HalfInteger {
 public:
  constexpr HalfInteger() = default;

  static constexpr HalfInteger from_twice(std::int64_t twice) { return HalfInteger(twice); }
  static constexpr HalfInteger integer(std::int64_t n) { return HalfInteger(2 * n); }
  /// n - 1/2
  static constexpr HalfInteger odd_half(std::int64_t n) { return HalfInteger(2 * n - 1); }

  /// Exact conversion; nullopt unless 2x is an integer (to within `tol`).
  static std::optional<HalfInteger> from_double(double x, double tol = 0.0);

  constexpr std::int64_t twice_value() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr bool is_odd_half() const { return twice_ % 2 != 0; }
  constexpr double value() const { return static_cast<double>(twice_) / 2.0; }

  constexpr HalfInteger operator-() const { return HalfInteger(-twice_); }
  constexpr HalfInteger operator+(HalfInteger o) const { return HalfInteger(twice_ + o.twice_); }
  constexpr HalfInteger operator-(HalfInteger o) const { return HalfInteger(twice_ - o.twice_); }
  constexpr HalfInteger& operator+=(HalfInteger o) { twice_ += o.twice_; return *this; }
  constexpr HalfInteger& operator-=(HalfInteger o) { twice_ -= o.twice_; return *this; }

  constexpr auto operator<=>(const HalfInteger&) const = default;

  std::string to_string() const;

 private:
  constexpr explicit HalfInteger(std::int64_t twice) : twice_(twice) {}
  std::int64_t twice_ = 0;
};

}  // namespace lpd
