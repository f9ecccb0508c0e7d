#include "lpd/half_integer.hpp"

#include <cmath>

namespace lpd {

std::optional<HalfInteger> HalfInteger::from_double(double x, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  const double twice = 2.0 * x;
  const double r = std::nearbyint(twice);
  if (std::abs(twice - r) > 2.0 * tol) return std::nullopt;
  if (std::abs(r) > 9.0e15) return std::nullopt;
  return HalfInteger(static_cast<std::int64_t>(r));
}

std::string HalfInteger::to_string() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

}  // namespace lpd
