#include "lpd/oracle.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "lpd/bessel.hpp"
#include "lpd/legendre.hpp"
#include "lpd/scalars.hpp"
#include "quadrature.hpp"

namespace lpd {
namespace {

using std::numbers::pi;

const Complex kI{0.0, 1.0};

// Smallest integrability margin at t = 0 for which derivative integrals are attempted.
constexpr double kMinDerivativeMargin = 0.2;

detail::QuadControl control(const QuadratureSpec& spec) {
  spec.validate();
  return {spec.rel_tol, spec.max_subdivisions, spec.tail_cut};
}

// e^{-a t} t^{b}
Complex exp_power(Complex a, Complex b, double t) { return std::exp(-a * t + b * std::log(t)); }

EvalResult scaled(const detail::QuadOutcome& q, Complex factor) {
  return {q.value * factor, Method::Quadrature, q.err * std::abs(factor)};
}

bool is_real(Complex x) { return x.imag() == 0.0; }

struct DerivIntegral {
  detail::SemiInfiniteIntegrand integrand;
  Complex factor;
};

// Integral representation of the requested derivative, or nullopt when the
// representation does not converge (with margin) at the request.
std::optional<DerivIntegral> derivative_integral(const DerivRequest& req) {
  const Complex z = req.z;
  const int m = req.eval_int;
  const double s = to_int(req.sign);
  const Complex f = req.fixed_param;

  if (req.wrt == Wrt::Order) {
    // kernel e^{-z' t}, z' = z / sqrt(z^2 - 1)
    if (!(z.real() > 0.0)) return std::nullopt;
    const double margin = f.real() + 0.5 - m;
    if (!(margin >= kMinDerivativeMargin)) return std::nullopt;
    const Complex zp = whipple_argument(z);
    const Complex mu = s * m;
    const Complex psi = digamma(f - mu + 0.5);
    const Complex lead = z2m1_pow(zp, 0.5 * f + 0.25) * recip_gamma(f - mu + 0.5);
    detail::SemiInfiniteIntegrand in;
    in.power_at_zero = margin - 1.0;
    in.power_at_infinity = f.real() - 1.0;
    if (req.target == Target::Q) {
      if (!(zp.real() > -1.0)) return std::nullopt;
      const Complex c = kI * pi + psi;
      in.decay = zp.real() + 1.0;
      in.f = [=](double t) {
        return exp_power(zp + 1.0, f - 0.5, t) *
               (c * bessel_k_scaled(m, t) + dk_dorder_at_int_scaled(m, req.sign, t));
      };
      return DerivIntegral{in, exp_i_pi(mu) * lead};
    }
    if (!(zp.real() > 1.0)) return std::nullopt;
    // d/dmu I_{-mu} = -[dI/dnu] at nu = -mu
    const Sign flipped = flip(req.sign);
    in.decay = zp.real() - 1.0;
    in.f = [=](double t) {
      const ScaledDI di = di_dorder_at_int_scaled(m, flipped, t);
      const Complex grow = exp_power(zp - 1.0, f - 0.5, t);
      const Complex decay = exp_power(zp + 1.0, f - 0.5, t);
      return grow * (psi * bessel_i_scaled(m, t) - di.i_part) - decay * di.k_part;
    };
    return DerivIntegral{in, lead};
  }

  const Complex mu = f;
  const double b = s * m;
  if (req.target == Target::P) {
    // K kernel with Bessel order b, exponent t^{-mu-1/2}
    if (!(z.real() > -1.0)) return std::nullopt;
    const double margin = 0.5 - mu.real() - m;
    if (!(margin >= kMinDerivativeMargin)) return std::nullopt;
    const Complex c = digamma(0.5 - mu - b) - digamma(0.5 - mu + b);
    const Complex lead =
        std::sqrt(2.0 / pi) * z2m1_pow(z, -0.5 * mu) * recip_gamma(0.5 - mu - b) * recip_gamma(0.5 - mu + b);
    detail::SemiInfiniteIntegrand in;
    in.power_at_zero = margin - 1.0;
    in.power_at_infinity = -mu.real() - 1.0;
    in.decay = z.real() + 1.0;
    in.f = [=](double t) {
      return exp_power(z + 1.0, -mu - 0.5, t) *
             (c * bessel_k_scaled(m, t) + dk_dorder_at_int_scaled(m, req.sign, t));
    };
    return DerivIntegral{in, lead};
  }

  // I kernel with Bessel order b, exponent t^{mu-1/2}
  if (!(z.real() > 1.0)) return std::nullopt;
  const double margin = mu.real() + 0.5 - m;
  if (!(margin >= kMinDerivativeMargin)) return std::nullopt;
  detail::SemiInfiniteIntegrand in;
  in.power_at_zero = margin - 1.0;
  in.power_at_infinity = mu.real() - 1.0;
  in.decay = z.real() - 1.0;
  in.f = [=](double t) {
    const ScaledDI di = di_dorder_at_int_scaled(m, req.sign, t);
    return exp_power(z - 1.0, mu - 0.5, t) * di.i_part + exp_power(z + 1.0, mu - 0.5, t) * di.k_part;
  };
  return DerivIntegral{in, std::sqrt(0.5 * pi) * exp_i_pi(mu) * z2m1_pow(z, 0.5 * mu)};
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol >= 1e-14 && rel_tol <= 1e-6)) throw DomainError("QuadratureSpec: rel_tol must lie in [1e-14, 1e-6]");
  if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions must be positive");
  if (tail_cut && !(std::isfinite(*tail_cut) && *tail_cut > 0.0)) {
    throw DomainError("QuadratureSpec: tail_cut must be finite and positive");
  }
}

EvalResult quad_ik(Complex alpha, double order, Complex z, const QuadratureSpec& spec) {
  const auto ctl = control(spec);
  if (!(z.real() > -1.0)) throw DomainError("quad_ik: requires Re z > -1");
  if (!(std::abs(order) <= kMaxBesselOrder)) throw DomainError("quad_ik: |order| above 60");
  const double margin = alpha.real() - std::abs(order) + 0.5;
  if (!(margin > 0.0)) throw DomainError("quad_ik: integral diverges at 0 (Re(alpha - |order| + 1/2) <= 0)");
  detail::SemiInfiniteIntegrand in;
  in.power_at_zero = margin - 1.0;
  in.power_at_infinity = alpha.real() - 1.0;
  in.decay = z.real() + 1.0;
  in.f = [=](double t) { return exp_power(z + 1.0, alpha - 0.5, t) * bessel_k_scaled(order, t); };
  return scaled(detail::integrate_semi_infinite(in, ctl), 1.0);
}

EvalResult quad_ii(Complex alpha, double order, Complex z, const QuadratureSpec& spec) {
  const auto ctl = control(spec);
  if (!(z.real() > 1.0)) throw DomainError("quad_ii: requires Re z > 1");
  if (!(std::abs(order) <= kMaxBesselOrder)) throw DomainError("quad_ii: |order| above 60");
  const double margin = alpha.real() + order + 0.5;
  if (!(margin > 0.0)) throw DomainError("quad_ii: integral diverges at 0 (Re(alpha + order + 1/2) <= 0)");
  detail::SemiInfiniteIntegrand in;
  in.power_at_zero = margin - 1.0;
  in.power_at_infinity = alpha.real() - 1.0;
  in.decay = z.real() - 1.0;
  in.f = [=](double t) { return exp_power(z - 1.0, alpha - 0.5, t) * bessel_i_scaled(order, t); };
  return scaled(detail::integrate_semi_infinite(in, ctl), 1.0);
}

Complex ik_first_form(Complex alpha, double order, Complex z) {
  return std::sqrt(0.5 * pi) * gamma(alpha - order + 0.5) * gamma(alpha + order + 0.5) * z2m1_pow(z, -0.5 * alpha) *
         legendre_p(order - 0.5, -alpha, z);
}

Complex ik_second_form(Complex alpha, double order, Complex z) {
  return gamma(alpha - order + 0.5) * z2m1_pow(z, -0.5 * alpha - 0.25) * exp_i_pi(-order) *
         legendre_q(alpha - 0.5, order, whipple_argument(z));
}

Complex ii_first_form(Complex alpha, double order, Complex z) {
  return std::sqrt(2.0 / pi) * exp_i_pi(-alpha) * z2m1_pow(z, -0.5 * alpha) * legendre_q(order - 0.5, alpha, z);
}

Complex ii_second_form(Complex alpha, double order, Complex z) {
  return gamma(alpha + order + 0.5) * z2m1_pow(z, -0.5 * alpha - 0.25) *
         legendre_p(alpha - 0.5, -order, whipple_argument(z));
}

EvalResult quad_legendre_p(Complex nu, Complex mu, Complex z, const QuadratureSpec& spec) {
  ParamPoint{nu, mu, z}.validate();
  const double b = nu.real() + 0.5;
  if (is_real(nu) && std::abs(b) <= kMaxBesselOrder && z.real() > -1.0 && -mu.real() - std::abs(b) + 0.5 > 0.0) {
    const Complex factor = std::sqrt(2.0 / pi) * recip_gamma(-mu - nu) * recip_gamma(-mu + nu + 1.0) *
                           z2m1_pow(z, -0.5 * mu);
    const EvalResult r = quad_ik(-mu, b, z, spec);
    return {r.value * factor, Method::Quadrature, r.err_estimate * std::abs(factor)};
  }
  if (is_real(mu) && z.real() > 0.0 && std::abs(mu.real()) <= kMaxBesselOrder) {
    const Complex zp = whipple_argument(z);
    if (zp.real() > 1.0 && (nu - mu + 1.0).real() > 0.0) {
      const Complex factor = recip_gamma(nu - mu + 1.0) * z2m1_pow(zp, 0.5 * (nu + 0.5) + 0.25);
      const EvalResult r = quad_ii(nu + 0.5, -mu.real(), zp, spec);
      return {r.value * factor, Method::Quadrature, r.err_estimate * std::abs(factor)};
    }
  }
  throw DomainError("quad_legendre_p: no convergent integral representation at this point");
}

EvalResult quad_legendre_q(Complex nu, Complex mu, Complex z, const QuadratureSpec& spec) {
  ParamPoint{nu, mu, z}.validate();
  const double b = nu.real() + 0.5;
  if (is_real(nu) && std::abs(b) <= kMaxBesselOrder && z.real() > 1.0 && (mu + b + 0.5).real() > 0.0) {
    const Complex factor = std::sqrt(0.5 * pi) * exp_i_pi(mu) * z2m1_pow(z, 0.5 * mu);
    const EvalResult r = quad_ii(mu, b, z, spec);
    return {r.value * factor, Method::Quadrature, r.err_estimate * std::abs(factor)};
  }
  if (is_real(mu) && z.real() > 0.0 && std::abs(mu.real()) <= kMaxBesselOrder) {
    const Complex zp = whipple_argument(z);
    if (zp.real() > -1.0 && nu.real() + 1.0 - std::abs(mu.real()) > 0.0) {
      const Complex factor =
          exp_i_pi(mu) * recip_gamma(nu - mu + 1.0) * z2m1_pow(zp, 0.5 * (nu + 0.5) + 0.25);
      const EvalResult r = quad_ik(nu + 0.5, mu.real(), zp, spec);
      return {r.value * factor, Method::Quadrature, r.err_estimate * std::abs(factor)};
    }
  }
  throw DomainError("quad_legendre_q: no convergent integral representation at this point");
}

namespace {

// Richardson ladder over samples at steps h 2^j with even error expansion in h.
EvalResult richardson(std::vector<Complex> row, Method method) {
  for (const Complex& v : row) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw EvaluationError("finite difference: function is not finite near the evaluation point");
    }
  }
  const int levels = static_cast<int>(row.size()) - 1;
  Complex best = row[0];
  double err = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= levels; ++k) {
    const double denom = std::ldexp(1.0, 2 * k) - 1.0;
    for (int j = 0; j + k <= levels; ++j) row[j] += (row[j] - row[j + 1]) / denom;
    const double correction = std::abs(row[0] - best);
    if (correction > err) break;
    best = row[0];
    err = correction;
  }
  return {best, method, err};
}

void check_step(double h, int levels) {
  if (!(h >= 1e-6 && h <= 1e-1)) throw DomainError("finite difference: h must lie in [1e-6, 1e-1]");
  if (levels < 1 || levels > 10) throw DomainError("finite difference: levels must lie in [1, 10]");
}

}  // namespace

EvalResult fd_param_derivative(const std::function<Complex(double)>& f, double at, double h, int levels) {
  check_step(h, levels);
  std::vector<Complex> row(levels + 1);
  for (int j = 0; j <= levels; ++j) {
    const double hj = std::ldexp(h, j);
    row[j] = (f(at + hj) - f(at - hj)) / (2.0 * hj);
  }
  return richardson(std::move(row), Method::FiniteDifference);
}

EvalResult fd_param_derivative_stepped(const std::function<Complex(double)>& f, double at) {
  struct Candidate {
    double h;
    int levels;
  };
  constexpr std::array<Candidate, 4> kLadder{{{kFdStep, kFdLevels}, {1e-2, 3}, {3e-2, 3}, {1e-1, 3}}};
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  EvalResult best{};
  double best_score = std::numeric_limits<double>::infinity();
  for (const Candidate& c : kLadder) {
    double scale = 0.0;
    const auto tracked = [&](double x) {
      const Complex v = f(x);
      scale = std::max(scale, std::abs(v));
      return v;
    };
    EvalResult r = fd_param_derivative(tracked, at, c.h, c.levels);
    const double rounding = 2.0 * kEps * scale / c.h;
    r.err_estimate += rounding;
    if (r.err_estimate < best_score) {
      best_score = r.err_estimate;
      best = r;
    }
  }
  return best;
}

EvalResult fd_param_value(const std::function<Complex(double)>& f, double at, double h, int levels) {
  check_step(h, levels);
  std::vector<Complex> row(levels + 1);
  for (int j = 0; j <= levels; ++j) {
    const double hj = std::ldexp(h, j);
    row[j] = 0.5 * (f(at + hj) + f(at - hj));
  }
  return richardson(std::move(row), Method::FiniteDifference);
}

EvalResult fd_derivative(const DerivRequest& req, double h, int levels) {
  req.validate();
  return fd_param_derivative([&req](double x) { return legendre_at_offset(req, x); }, 0.0, h, levels);
}

bool quad_derivative_applies(const DerivRequest& req) {
  try {
    req.validate();
    return derivative_integral(req).has_value();
  } catch (const std::exception&) {
    return false;
  }
}

EvalResult quad_derivative(const DerivRequest& req, const QuadratureSpec& spec) {
  req.validate();
  const auto ctl = control(spec);
  const auto rep = derivative_integral(req);
  if (!rep) throw DomainError("quad_derivative: integral representation does not converge at this request");
  return scaled(detail::integrate_semi_infinite(rep->integrand, ctl), rep->factor);
}

double relative_discrepancy(Complex value, Complex oracle) {
  return std::abs(value - oracle) / std::max(std::abs(oracle), 1e-300);
}

bool within_tolerance(Complex closed, Complex oracle, double tol) {
  if (closed == Complex{}) return std::abs(oracle) <= tol;
  return std::abs(closed - oracle) <= tol * std::abs(oracle);
}

std::size_t ConformanceReport::failures() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const auto& c) { return !c.passed; }));
}

namespace {

template <typename F>
OracleComparison compare(F&& oracle, Complex closed, double tol) {
  OracleComparison out;
  try {
    const EvalResult r = oracle();
    out.value = r.value;
    out.err_estimate = r.err_estimate;
    out.rel_discrepancy = relative_discrepancy(closed, r.value);
    out.passed = within_tolerance(closed, r.value, tol);
  } catch (const std::exception& e) {
    out.error = std::string(error_kind(e)) + ": " + e.what();
    out.passed = false;
  }
  return out;
}

ConformanceCase run_case(const DerivRequest& req, const QuadratureSpec& spec, Thresholds th) {
  ConformanceCase c;
  c.request = req;
  try {
    c.closed_form = evaluate(req);
  } catch (const std::exception& e) {
    c.error_kind = error_kind(e);
    c.error = e.what();
    return c;
  }
  const Complex cf = c.closed_form->value;
  c.fd = compare([&] { return fd_derivative(req); }, cf, th.fd);
  if (quad_derivative_applies(req)) c.quad = compare([&] { return quad_derivative(req, spec); }, cf, th.quad);
  c.passed = c.fd->passed && (!c.quad || c.quad->passed);
  return c;
}

}  // namespace

ConformanceReport conformance_run(std::span<const DerivRequest> grid, const QuadratureSpec& spec, Thresholds th) {
  spec.validate();
  ConformanceReport report;
  report.cases.resize(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) report.cases[i] = run_case(grid[i], spec, th);
  };
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads = std::min<std::size_t>({hw, 8, grid.size()});
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return report;
}

std::vector<DerivRequest> default_acceptance_grid() {
  constexpr std::array<std::pair<Target, Wrt>, 4> families = {{
      {Target::Q, Wrt::Order}, {Target::P, Wrt::Degree}, {Target::Q, Wrt::Degree}, {Target::P, Wrt::Order}}};
  constexpr std::array<double, 4> free_values = {0.3, 0.7, 1.4, 2.6};
  constexpr std::array<double, 4> z_values = {1.1, 1.5, 2.0, 5.0};
  constexpr std::array<Sign, 2> signs = {Sign::Plus, Sign::Minus};
  std::vector<DerivRequest> grid;
  for (const auto& [target, wrt] : families) {
    for (int k = 0; k <= 3; ++k) {
      for (Sign s : signs) {
        for (double f : free_values) {
          for (double z : z_values) grid.push_back({target, wrt, f, k, s, z});
        }
      }
    }
  }
  for (double f : {-1.3, -2.6}) {
    for (int k = 0; k <= 3; ++k) {
      for (Sign s : signs) {
        for (double z : z_values) grid.push_back({Target::P, Wrt::Degree, f, k, s, z});
      }
    }
  }
  return grid;
}

}  // namespace lpd
