// Closed-form derivatives of P and Q with respect to degree and order.
//
// Order derivatives are taken at integer orders mu = +-m for a free degree
// nu - 1/2; degree derivatives at odd-half-integer degrees +-n - 1/2 for a
// free order mu. Every routine returns the bare derivative.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "lpd/half_integer.hpp"
#include "lpd/types.hpp"

namespace lpd {

enum class Target { P, Q };
enum class Wrt { Degree, Order };

struct DerivRequest {
  Target target = Target::P;
  Wrt wrt = Wrt::Degree;
  /// The parameter that is not differentiated: nu (degree nu - 1/2) for
  /// order derivatives, mu for degree derivatives.
  Complex fixed_param{};
  int eval_int = 0;  // m or n
  Sign sign = Sign::Plus;
  Complex z{};

  /// Value of the differentiated Legendre parameter: sign*m, or sign*n - 1/2.
  HalfInteger eval_point() const;
  /// Legendre degree and order at which the derivative is taken.
  Complex degree() const;
  Complex order() const;
  /// "dP/dnu", "dQ/dmu", ...
  std::string function_tag() const;
  void validate() const;
};

/// Undifferentiated function value at the evaluation point shifted by
/// `offset` in the differentiated parameter.
Complex legendre_at_offset(const DerivRequest& req, double offset);

/// How dp_ddegree evaluates psi(mu+n+1/2) - psi(mu-n+1/2).
enum class DigammaDifference { FiniteSum, DirectDigamma };

/// [dQ_{nu-1/2}^mu/dmu] at mu = +-m.
EvalResult dq_dorder(const DerivRequest& req);
/// [dP_{nu-1/2}^mu/dnu] at nu = +-n.
EvalResult dp_ddegree(const DerivRequest& req, DigammaDifference mode = DigammaDifference::FiniteSum);
/// [dQ_{nu-1/2}^mu/dnu] at nu = +-n. Requires Re z > 0.
EvalResult dq_ddegree(const DerivRequest& req);
/// [dP_{nu-1/2}^mu/dmu] at mu = +-m.
EvalResult dp_dorder(const DerivRequest& req);

/// Dispatch on target and wrt.
EvalResult evaluate(const DerivRequest& req);

/// The zero-index and unit-index special cases written out term by term
/// (mu = 0, +-1 for order derivatives; nu = 0, +-1 for degree derivatives),
/// evaluated without the general summation code. eval_int must be 0 or 1.
Complex displayed_special_case(const DerivRequest& req);

struct SpecialCaseEntry {
  DerivRequest request;
  Complex general{};
  Complex displayed{};
  double rel_discrepancy = 0.0;
  bool passed = false;
  std::string error;  // empty unless evaluation threw
};

struct SpecialCaseReport {
  std::vector<SpecialCaseEntry> entries;
  double max_rel_discrepancy = 0.0;
  bool all_passed() const;
};

inline constexpr double kSpecialCaseTolerance = 1e-12;

/// Every special case (4 families x {0, +1, -1}) on the given grid.
SpecialCaseReport special_case_suite(std::span<const Complex> free_values,
                                     std::span<const Complex> z_values,
                                     double tol = kSpecialCaseTolerance);
/// Default grid: free parameter {0.3, 0.7, 1.4, 2.6}, z {1.1, 1.5, 2, 5}.
SpecialCaseReport special_case_suite();

}  // namespace lpd
