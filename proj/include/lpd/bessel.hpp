// Modified Bessel functions of real order and their order derivatives at
// integer orders.
#pragma once

#include <optional>

#include "lpd/half_integer.hpp"
#include "lpd/types.hpp"

namespace lpd {

/// Bessel order: a real value, plus the exact half-integer when the order is
/// structurally integer or half-integer.
struct BesselOrder {
  double value = 0.0;
  std::optional<HalfInteger> exact;

  static BesselOrder of(double v) { return {v, HalfInteger::from_double(v)}; }
  static BesselOrder of(HalfInteger h) { return {h.value(), h}; }
};

inline constexpr double kMaxBesselOrder = 60.0;
inline constexpr double kMaxBesselArgument = 700.0;

/// I_order(t), t > 0, |order| <= 60, t <= 700.
double bessel_i(double order, double t);
/// K_order(t), t > 0, |order| <= 60. Even in the order by construction.
double bessel_k(double order, double t);

/// e^{-t} I_order(t); no upper bound on t.
double bessel_i_scaled(double order, double t);
/// e^{t} K_order(t); no upper bound on t.
double bessel_k_scaled(double order, double t);

/// [dK_mu(t)/dmu] at mu = sign*m:
///   sign * m! sum_{k=0}^{m-1} t^{k-m} / (k! (m-k) 2^{k-m+1}) K_k(t)
double dk_dorder_at_int(int m, Sign sign, double t);

/// [dI_nu(t)/dnu] at nu = sign*n:
///   (-1)^{n+1} K_n(t) + sign * n! sum_{k=0}^{n-1} (-1)^{k-n} t^{k-n} / (k! (n-k) 2^{k-n+1}) I_k(t)
double di_dorder_at_int(int n, Sign sign, double t);

/// Same sums with every Bessel factor exponentially scaled: e^{t} dK and
/// the (K-part, I-part) of dI as (e^{t} K-term, e^{-t} I-term).
double dk_dorder_at_int_scaled(int m, Sign sign, double t);
struct ScaledDI {
  double k_part = 0.0;  // e^{t} * (-1)^{n+1} K_n(t)
  double i_part = 0.0;  // e^{-t} * (sign n! sum ... I_k(t))
};
ScaledDI di_dorder_at_int_scaled(int n, Sign sign, double t);

}  // namespace lpd
