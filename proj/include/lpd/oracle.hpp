// Independent numerical references: semi-infinite quadrature of the
// Bessel-kernel integral representations, Richardson finite differences in
// a parameter, and the conformance runner built on both.
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lpd/param_derivs.hpp"
#include "lpd/types.hpp"

namespace lpd {

struct QuadratureSpec {
  double rel_tol = 1e-10;
  int max_subdivisions = 60;
  /// Upper integration limit. Empty: first t where the exponential envelope
  /// drops below 1e-18 of its peak.
  std::optional<double> tail_cut;

  void validate() const;
};

/// int_0^inf e^{-zt} K_order(t) t^{alpha-1/2} dt
EvalResult quad_ik(Complex alpha, double order, Complex z, const QuadratureSpec& spec = {});
/// int_0^inf e^{-zt} I_order(t) t^{alpha-1/2} dt, Re z > 1
EvalResult quad_ii(Complex alpha, double order, Complex z, const QuadratureSpec& spec = {});

/// Closed forms of the two integrals. "first" is written with Legendre
/// functions of z, "second" with Legendre functions of z/sqrt(z^2-1).
Complex ik_first_form(Complex alpha, double order, Complex z);
Complex ik_second_form(Complex alpha, double order, Complex z);
Complex ii_first_form(Complex alpha, double order, Complex z);
Complex ii_second_form(Complex alpha, double order, Complex z);

/// P_nu^mu(z) and Q_nu^mu(z) from one of the integrals. DomainError when
/// neither representation converges at the point.
EvalResult quad_legendre_p(Complex nu, Complex mu, Complex z, const QuadratureSpec& spec = {});
EvalResult quad_legendre_q(Complex nu, Complex mu, Complex z, const QuadratureSpec& spec = {});

inline constexpr double kFdStep = 1e-3;
inline constexpr int kFdLevels = 2;

/// Central differences at steps h 2^j, j = 0..levels, combined by
/// Richardson extrapolation. err_estimate is the last applied correction.
EvalResult fd_param_derivative(const std::function<Complex(double)>& f, double at, double h = kFdStep,
                               int levels = kFdLevels);

/// fd_param_derivative over a ladder of steps, keeping the one whose
/// extrapolation error plus rounding bound eps max|f| / h is smallest.
/// For ill-conditioned targets (|f| much larger than |f'|) the default step
/// is dominated by cancellation.
EvalResult fd_param_derivative_stepped(const std::function<Complex(double)>& f, double at);

/// Symmetric averages (f(at+h 2^j) + f(at-h 2^j))/2 under the same
/// extrapolation: a reference for f(at) that never samples f at `at`.
EvalResult fd_param_value(const std::function<Complex(double)>& f, double at, double h = kFdStep,
                          int levels = kFdLevels);

/// Finite difference of legendre_p / legendre_q in the differentiated parameter.
EvalResult fd_derivative(const DerivRequest& req, double h = kFdStep, int levels = kFdLevels);

/// Derivative under the integral sign, using the Bessel order derivatives.
/// Available for every family when the integrand is integrable with margin.
bool quad_derivative_applies(const DerivRequest& req);
EvalResult quad_derivative(const DerivRequest& req, const QuadratureSpec& spec = {});

struct Thresholds {
  double fd = 1e-6;
  double quad = 1e-7;
};

struct OracleComparison {
  Complex value{};
  double err_estimate = 0.0;
  double rel_discrepancy = 0.0;  // |closed - oracle| / max(|oracle|, 1e-300)
  bool passed = false;
  std::string error;  // oracle failed to evaluate
};

struct ConformanceCase {
  DerivRequest request;
  std::optional<EvalResult> closed_form;
  std::optional<OracleComparison> fd;
  std::optional<OracleComparison> quad;
  std::string error_kind;  // "domain-error", "pole-error", ... when the closed form threw
  std::string error;
  bool passed = false;
};

struct ConformanceReport {
  std::vector<ConformanceCase> cases;
  std::size_t failures() const;
  bool all_passed() const { return !cases.empty() && failures() == 0; }
};

/// |closed - oracle| <= tol |oracle|; an exactly zero closed form passes when
/// |oracle| <= tol.
bool within_tolerance(Complex closed, Complex oracle, double tol);
double relative_discrepancy(Complex value, Complex oracle);

/// Runs every request; per-case failures are recorded, never thrown. Cases may
/// be evaluated on several threads, the report is in grid order.
ConformanceReport conformance_run(std::span<const DerivRequest> grid, const QuadratureSpec& spec = {},
                                  Thresholds thresholds = {});

/// All four families at m,n in {0..3}, both signs, free {0.3, 0.7, 1.4, 2.6},
/// z {1.1, 1.5, 2, 5}; followed by dP/dnu at free {-1.3, -2.6} where the
/// integral route for that family converges.
std::vector<DerivRequest> default_acceptance_grid();

}  // namespace lpd
