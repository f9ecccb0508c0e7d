// Adaptive Gauss-Kronrod integration over [0, inf) for integrands with an
// algebraic endpoint behaviour at 0 and exponential decay at infinity.
#pragma once

#include <functional>
#include <optional>

#include "lpd/types.hpp"

namespace lpd::detail {

struct SemiInfiniteIntegrand {
  std::function<Complex(double)> f;
  double power_at_zero = 0.0;      // |f(t)| ~ t^power_at_zero (times logs) as t -> 0; must exceed -1
  double decay = 1.0;              // |f(t)| ~ t^power_at_infinity e^{-decay t} as t -> inf; must be positive
  double power_at_infinity = 0.0;
};

struct QuadControl {
  double rel_tol = 1e-10;
  int max_subdivisions = 60;
  std::optional<double> tail_cut;
};

struct QuadOutcome {
  Complex value{};
  double err = 0.0;
  double tail_cut = 0.0;
  int subdivisions = 0;
};

/// Envelope cut: first t past the envelope peak where t^q e^{-decay t} has
/// fallen below `ratio` of its peak value.
double envelope_tail_cut(double decay, double power_at_infinity, double ratio = 1e-18);

/// Throws ConvergenceError when the subdivision budget runs out before the
/// requested tolerance is met.
QuadOutcome integrate_semi_infinite(const SemiInfiniteIntegrand& in, const QuadControl& ctl);

}  // namespace lpd::detail
