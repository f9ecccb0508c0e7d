#include "lpd/legendre.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hypergeometric.hpp"
#include "lpd/scalars.hpp"

namespace lpd {
namespace {

using std::numbers::pi;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kCutTolerance = 1e-14;
// Series regions. |y| close to 1 is reachable but costs ~ 36/(1-|y|) terms.
constexpr double kYSeriesMax = 0.999;
constexpr double kXSeriesMax = 0.9;
constexpr double kQSeriesMinAbs = 1.1;
constexpr int kMaxTerms = 400000;
constexpr int kMaxDepth = 4;
// Perturbation used where a connection formula divides by a vanishing sine.
constexpr double kConnectionGuard = 0.05;
constexpr double kPerturbStep = 3e-4;

const Complex kI{0.0, 1.0};

struct Value {
  Complex v{};
  double err = 0.0;  // absolute
};

// Sixth-order symmetric extrapolation of f(x) from f(x +- k d), k = 1..3;
// used where f itself is a removable 0/0 at x.
template <typename F>
Value symmetric_limit(F&& f, Complex x) {
  auto avg = [&](double k) {
    const Value a = f(x + k * kPerturbStep);
    const Value b = f(x - k * kPerturbStep);
    return Value{0.5 * (a.v + b.v), 0.5 * (a.err + b.err) + kEps * (std::abs(a.v) + std::abs(b.v))};
  };
  const Value a1 = avg(1.0);
  const Value a2 = avg(2.0);
  const Value a3 = avg(3.0);
  const Complex v = (15.0 * a1.v - 6.0 * a2.v + a3.v) / 10.0;
  const double err = 2.2 * (a1.err + a2.err + a3.err) + 1e-12 * std::abs(v);
  return {v, err};
}

// `exponent` is the argument of the exp() that produced the prefactor; its
// rounding is amplified by |exponent|.
Value from_series(Complex exponent, Complex factor, const detail::SeriesSum& s) {
  const Complex prefactor = factor * std::exp(exponent);
  const double scale = std::abs(prefactor);
  const double amp = 4.0 + std::abs(exponent);
  return {prefactor * s.value, scale * (8.0 * kEps * (s.abs_sum + s.weighted_sum) + s.tail) + amp * kEps * scale * std::abs(s.value)};
}

// P = ((z+1)/(z-1))^{mu/2} ((z+1)/2)^nu F(-nu, -mu-nu; 1-mu; (z-1)/(z+1)) / Gamma(1-mu)
Value p_y_series(Complex nu, Complex mu, Complex z) {
  const Complex y = (z - 1.0) / (z + 1.0);
  const Complex lp = std::log(z + 1.0);
  const Complex lm = std::log(z - 1.0);
  const Complex ex = 0.5 * mu * (lp - lm) + nu * (lp - std::log(2.0));
  return from_series(ex, 1.0, detail::hyp2f1_regularized(-nu, -mu - nu, 1.0 - mu, y, kMaxTerms));
}

// P = ((z+1)/(z-1))^{mu/2} F(nu+1, -nu; 1-mu; (1-z)/2) / Gamma(1-mu)
Value p_x_series(Complex nu, Complex mu, Complex z) {
  const Complex x = 0.5 * (1.0 - z);
  const Complex ex = 0.5 * mu * (std::log(z + 1.0) - std::log(z - 1.0));
  return from_series(ex, 1.0, detail::hyp2f1_regularized(nu + 1.0, -nu, 1.0 - mu, x, kMaxTerms));
}

// Scaled Q = sqrt(pi) (z^2-1)^{mu/2} / (2^{nu+1} z^{nu+mu+1})
//            F(nu/2+mu/2+1, nu/2+mu/2+1/2; nu+3/2; 1/z^2) / Gamma(nu+3/2)
Value qs_series(Complex nu, Complex mu, Complex z) {
  const Complex lsum = std::log(z - 1.0) + std::log(z + 1.0);
  const Complex ex = 0.5 * mu * lsum - (nu + 1.0) * std::log(2.0) - (nu + mu + 1.0) * std::log(z);
  const Complex h = 0.5 * (nu + mu);
  return from_series(ex, std::sqrt(pi), detail::hyp2f1_regularized(h + 1.0, h + 0.5, nu + 1.5, 1.0 / (z * z), kMaxTerms));
}

Value qs_eval(Complex nu, Complex mu, Complex z, int depth);

Value p_eval(Complex nu, Complex mu, Complex z, int depth) {
  if (depth > kMaxDepth) throw ConvergenceError("legendre_p: no convergent representation at this argument");
  if (nu.real() < -0.5) nu = -nu - 1.0;  // P_nu = P_{-nu-1}

  if (z.real() > 0.0 && std::abs((z - 1.0) / (z + 1.0)) <= kYSeriesMax) return p_y_series(nu, mu, z);
  if (std::abs(0.5 * (1.0 - z)) <= kXSeriesMax) return p_x_series(nu, mu, z);

  if (z.real() < 0.0) {
    // P(u) = e^{-i s nu pi} P(-u) + 2 Qs(-u) / Gamma(-nu-mu), s = sign Im(-u), s = -1 on the real ray
    const Complex r = -z;
    const double s = r.imag() > 0.0 ? 1.0 : -1.0;
    const Value pr = p_eval(nu, mu, r, depth + 1);
    const Value qr = qs_eval(nu, mu, r, depth + 1);
    const Complex g = recip_gamma(-nu - mu);
    const Complex ph = exp_i_pi(-s * nu);
    return {ph * pr.v + 2.0 * g * qr.v, std::abs(ph) * pr.err + 2.0 * std::abs(g) * qr.err};
  }

  // Large |z|: cos(nu pi) P = -Qs_nu / Gamma(-nu-mu) + Qs_{-nu-1} / Gamma(1+nu-mu)
  auto expansion = [&](Complex n) -> Value {
    const Value a = qs_eval(n, mu, z, depth + 1);
    const Value b = qs_eval(-n - 1.0, mu, z, depth + 1);
    const Complex ga = recip_gamma(-n - mu);
    const Complex gb = recip_gamma(1.0 + n - mu);
    const Complex c = cospi(n);
    const Complex v = (gb * b.v - ga * a.v) / c;
    const double terms = std::abs(ga * a.v) + std::abs(gb * b.v);
    return {v, (std::abs(ga) * a.err + std::abs(gb) * b.err + 4.0 * kEps * terms) / std::abs(c) +
                   4.0 * kEps * std::abs(v)};
  };
  if (std::abs(cospi(nu)) < kConnectionGuard) return symmetric_limit(expansion, nu);
  return expansion(nu);
}

Value qs_eval(Complex nu, Complex mu, Complex z, int depth) {
  if (depth > kMaxDepth) throw ConvergenceError("legendre_q: no convergent representation at this argument");
  if (std::abs(z) >= kQSeriesMinAbs) return qs_series(nu, mu, z);

  if (z.real() > 0.0) {
    // Whipple: Qs_nu^mu(z) = sqrt(pi/2) (z^2-1)^{-1/4} P_{-mu-1/2}^{-nu-1/2}(z/sqrt(z^2-1))
    const Complex pref = std::sqrt(0.5 * pi) * z2m1_pow(z, -0.25);
    const Value p = p_eval(-mu - 0.5, -nu - 0.5, whipple_argument(z), depth + 1);
    return {pref * p.v, std::abs(pref) * p.err};
  }
  if (z.real() < 0.0) {
    // Q(u) = -e^{i s nu pi} Q(-u), s = sign Im(-u)
    const Complex r = -z;
    const double s = r.imag() > 0.0 ? 1.0 : -1.0;
    const Value q = qs_eval(nu, mu, r, depth + 1);
    const Complex ph = -exp_i_pi(s * nu);
    return {ph * q.v, std::abs(ph) * q.err};
  }

  // Imaginary axis near the origin:
  //   Qs = (pi/2) [P^mu / Gamma(nu+mu+1) - P^{-mu} / Gamma(nu-mu+1)] / sin(mu pi)
  auto connection = [&](Complex m) -> Value {
    const Value pp = p_eval(nu, m, z, depth + 1);
    const Value pm = p_eval(nu, -m, z, depth + 1);
    const Complex ga = recip_gamma(nu + m + 1.0);
    const Complex gb = recip_gamma(nu - m + 1.0);
    const Complex s = sinpi(m);
    const Complex v = 0.5 * pi * (ga * pp.v - gb * pm.v) / s;
    return {v, 0.5 * pi * (std::abs(ga) * pp.err + std::abs(gb) * pm.err) / std::abs(s) + 4.0 * kEps * std::abs(v)};
  };
  if (std::abs(sinpi(mu)) < kConnectionGuard) return symmetric_limit(connection, mu);
  return connection(mu);
}

void check_finite(Complex c, const char* what) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw DomainError(std::string("non-finite ") + what);
  }
}

}  // namespace

bool on_cut(Complex z) {
  return std::abs(z.imag()) <= kCutTolerance && z.real() >= -1.0 - kCutTolerance &&
         z.real() <= 1.0 + kCutTolerance;
}

void ParamPoint::validate() const {
  check_finite(nu, "degree");
  check_finite(mu, "order");
  check_finite(z, "argument");
  if (on_cut(z)) throw DomainError("legendre: argument lies on the cut [-1, 1]");
  if (std::abs(nu) > kMaxLegendreParameter || std::abs(mu) > kMaxLegendreParameter) {
    throw DomainError("legendre: |nu| and |mu| must not exceed 30");
  }
}

Complex z2m1_pow(Complex z, Complex alpha) {
  return std::exp(alpha * (std::log(z - 1.0) + std::log(z + 1.0)));
}

EvalResult legendre_p(const ParamPoint& p) {
  p.validate();
  const Value v = p_eval(p.nu, p.mu, p.z, 0);
  return {v.v, Method::Series, v.err};
}

EvalResult legendre_q_scaled(const ParamPoint& p) {
  p.validate();
  const Value v = qs_eval(p.nu, p.mu, p.z, 0);
  return {v.v, Method::Series, v.err};
}

EvalResult legendre_q(const ParamPoint& p) {
  p.validate();
  const Complex g = gamma(p.nu + p.mu + 1.0);  // PoleError when nu + mu + 1 is a pole
  const Value v = qs_eval(p.nu, p.mu, p.z, 0);
  const Complex f = exp_i_pi(p.mu) * g;
  return {f * v.v, Method::Series, std::abs(f) * v.err};
}

Complex log_coth_map(Complex z) {
  check_finite(z, "argument");
  if (!(std::abs(z.imag()) < pi)) throw DomainError("log_coth_map: argument outside the strip |Im z| < pi");
  if (z.imag() == 0.0 && z.real() <= 0.0) throw DomainError("log_coth_map: argument on the removed ray Re z <= 0");
  const Complex u = std::exp(-z);
  // log coth(z/2) = log((1+u)/(1-u)) = 2 artanh(u); the artanh form keeps precision for small u.
  if (std::abs(u) < 0.5) return 2.0 * std::atanh(u);
  return std::log(1.0 / std::tanh(0.5 * z));
}

Complex whipple_argument(Complex z) {
  check_finite(z, "argument");
  if (on_cut(z)) throw DomainError("whipple_argument: argument lies on the cut [-1, 1]");
  return z / z2m1_pow(z, 0.5);
}

EvalResult whipple_q_to_p(Complex nu, Complex mu, Complex z) {
  if (!(z.real() > 0.0)) throw DomainError("whipple_q_to_p: requires Re z > 0");
  const EvalResult q = legendre_q({nu, mu, z});
  const Complex f = std::sqrt(2.0 / pi) * z2m1_pow(z, 0.25) * exp_i_pi(-mu) / gamma(nu + mu + 1.0);
  return {f * q.value, Method::ClosedForm, std::abs(f) * q.err_estimate};
}

EvalResult whipple_p_to_q(Complex nu, Complex mu, Complex z) {
  if (!(z.real() > 0.0)) throw DomainError("whipple_p_to_q: requires Re z > 0");
  const Complex g = gamma(nu + mu + 1.0);
  const EvalResult p = legendre_p({-mu - 0.5, -nu - 0.5, whipple_argument(z)});
  const Complex f = std::sqrt(0.5 * pi) * g * exp_i_pi(mu) * z2m1_pow(z, -0.25);
  return {f * p.value, Method::ClosedForm, std::abs(f) * p.err_estimate};
}

Complex negative_order_p_from(Complex nu, Complex mu, Complex p_mu, Complex q_mu) {
  if (mu == 0.0) return p_mu;
  const Complex ratio = gamma(nu - mu + 1.0) * recip_gamma(nu + mu + 1.0);
  return ratio * (p_mu - (2.0 / pi) * exp_i_pi(-mu) * sinpi(mu) * q_mu);
}

EvalResult negative_order_p(Complex nu, Complex mu, Complex z) {
  const EvalResult p = legendre_p({nu, mu, z});
  if (mu == 0.0) return {p.value, Method::ClosedForm, p.err_estimate};
  // Written with the scaled Q so a pole of Gamma(nu+mu+1) cancels analytically.
  const Complex g = gamma(nu - mu + 1.0);
  const EvalResult qs = legendre_q_scaled({nu, mu, z});
  const Complex r = recip_gamma(nu + mu + 1.0);
  const Complex c = (2.0 / pi) * sinpi(mu);
  const Complex v = g * (r * p.value - c * qs.value);
  return {v, Method::ClosedForm,
          std::abs(g) * (std::abs(r) * p.err_estimate + std::abs(c) * qs.err_estimate) + 4.0 * kEps * std::abs(v)};
}

}  // namespace lpd
