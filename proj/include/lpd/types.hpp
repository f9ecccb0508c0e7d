// Core value types and error classes shared by every module.
#pragma once

#include <complex>
#include <exception>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lpd {

/// Double-precision complex value. Legendre functions off the cut carry
/// factors e^{i pi mu}, so every public value is complex.
using Complex = std::complex<double>;

/// Argument is outside the domain of the routine (on the cut, t <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A Gamma/Digamma pole makes the requested quantity undefined.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// Iterative or adaptive scheme exhausted its budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure inside a user-supplied function (e.g. the target of a finite difference).
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Method { ClosedForm, Quadrature, FiniteDifference, Series };

constexpr std::string_view to_string(Method m) {
  switch (m) {
    case Method::ClosedForm: return "closed-form";
    case Method::Quadrature: return "quadrature";
    case Method::FiniteDifference: return "finite-difference";
    case Method::Series: return "series";
  }
  return "unknown";
}

/// A computed value with the route that produced it. `err_estimate` is an
/// absolute error estimate: intent, not a certificate.
struct EvalResult {
  Complex value{};
  Method method = Method::ClosedForm;
  double err_estimate = 0.0;
};

/// The +/- in "evaluated at mu = +-m".
enum class Sign : int { Plus = 1, Minus = -1 };

constexpr int to_int(Sign s) { return static_cast<int>(s); }
constexpr Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

/// Short tag for a library exception: "pole-error", "domain-error", ...
inline std::string_view error_kind(const std::exception& e) {
  if (dynamic_cast<const PoleError*>(&e)) return "pole-error";
  if (dynamic_cast<const DomainError*>(&e)) return "domain-error";
  if (dynamic_cast<const OverflowError*>(&e)) return "overflow-error";
  if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence-error";
  if (dynamic_cast<const EvaluationError*>(&e)) return "evaluation-error";
  return "error";
}

}  // namespace lpd
