#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

#include "lpd/types.hpp"

namespace test_support {

inline double rel(lpd::Complex got, lpd::Complex want) {
  const double d = std::abs(got - want);
  if (d == 0.0) return 0.0;
  return d / std::max(std::abs(want), 1e-300);
}

}  // namespace test_support
