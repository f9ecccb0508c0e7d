#include "lpd/scalars.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace lpd {
namespace {

using std::numbers::pi;

constexpr double kStirlingRadius = 15.0;

// B_{2k}, k = 1..9
constexpr std::array<double, 9> kBernoulli = {
    1.0 / 6.0,         -1.0 / 30.0,     1.0 / 42.0,       -1.0 / 30.0,     5.0 / 66.0,
    -691.0 / 2730.0,   7.0 / 6.0,       -3617.0 / 510.0,  43867.0 / 798.0};

bool is_real(Complex x) { return x.imag() == 0.0; }

bool exactly_nonpositive_integer(Complex x) {
  return is_real(x) && x.real() <= 0.0 && x.real() == std::nearbyint(x.real());
}

void check_pole(Complex x, const char* fn) {
  if (near_nonpositive_integer(x)) {
    throw PoleError(std::string(fn) + ": argument at a pole of Gamma (" +
                    std::to_string(x.real()) + ", " + std::to_string(x.imag()) + ")");
  }
}

Complex wrap_imag(Complex v) {
  double im = std::remainder(v.imag(), 2.0 * pi);
  if (im <= -pi) im += 2.0 * pi;
  return {v.real(), im};
}

// Stirling series for log Gamma; requires Re x >= 1/2.
Complex log_gamma_right(Complex x) {
  Complex shift = 0.0;
  while (std::abs(x) < kStirlingRadius) {
    shift += std::log(x);
    x += 1.0;
  }
  const Complex inv = 1.0 / x;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex p = inv;
  for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
    const double n = 2.0 * static_cast<double>(k + 1);
    series += kBernoulli[k] / (n * (n - 1.0)) * p;
    p *= inv2;
  }
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * pi) + series - shift;
}

}  // namespace

bool near_nonpositive_integer(Complex x, double tol) {
  if (std::abs(x.imag()) > tol) return false;
  if (x.real() > tol) return false;
  return std::abs(x.real() - std::nearbyint(x.real())) <= tol;
}

Complex sinpi(Complex x) {
  const double n = std::nearbyint(x.real());
  const Complex r{x.real() - n, x.imag()};
  const Complex s = std::sin(pi * r);
  return std::fmod(std::abs(n), 2.0) == 1.0 ? -s : s;
}

Complex cospi(Complex x) {
  const double n = std::nearbyint(x.real());
  const Complex r{x.real() - n, x.imag()};
  // cos(pi r) vanishes only at r = +-1/2; write it as sin(pi(1/2 - |r|)).
  Complex c;
  if (r.imag() == 0.0 && std::abs(r.real()) == 0.5) {
    c = 0.0;
  } else {
    c = std::cos(pi * r);
  }
  return std::fmod(std::abs(n), 2.0) == 1.0 ? -c : c;
}

Complex exp_i_pi(Complex a) {
  const Complex unit{cospi(a.real()).real(), sinpi(a.real()).real()};
  return a.imag() == 0.0 ? unit : unit * std::exp(-pi * a.imag());
}

Complex gamma_ln(Complex x) {
  check_pole(x, "gamma_ln");
  if (is_real(x)) {
    int sign = 1;
    const double lg = ::lgamma_r(x.real(), &sign);
    return {lg, sign < 0 ? pi : 0.0};
  }
  if (x.real() >= 0.5) return wrap_imag(log_gamma_right(x));
  // Reflection: log Gamma(x) = log pi - log sin(pi x) - log Gamma(1 - x)
  return wrap_imag(std::log(pi) - std::log(sinpi(x)) - log_gamma_right(1.0 - x));
}

Complex gamma(Complex x) {
  check_pole(x, "gamma");
  if (is_real(x)) return std::tgamma(x.real());
  if (x.real() >= 0.5) return std::exp(log_gamma_right(x));
  return pi / (sinpi(x) * std::exp(log_gamma_right(1.0 - x)));
}

Complex recip_gamma(Complex x) {
  if (exactly_nonpositive_integer(x)) return 0.0;
  if (is_real(x)) {
    if (x.real() < 0.5) {
      // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi stays accurate next to the poles.
      return sinpi(x).real() * std::tgamma(1.0 - x.real()) / pi;
    }
    return 1.0 / std::tgamma(x.real());
  }
  if (x.real() >= 0.5) return std::exp(-log_gamma_right(x));
  return sinpi(x) * std::exp(log_gamma_right(1.0 - x)) / pi;
}

Complex digamma(Complex x) {
  check_pole(x, "digamma");
  Complex reflection = 0.0;
  if (x.real() < 0.5) {
    // psi(x) = psi(1 - x) - pi cot(pi x)
    reflection = -pi * cospi(x) / sinpi(x);
    x = 1.0 - x;
  }
  Complex shift = 0.0;
  while (std::abs(x) < kStirlingRadius) {
    shift += 1.0 / x;
    x += 1.0;
  }
  const Complex inv = 1.0 / x;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex p = inv2;
  for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
    const double n = 2.0 * static_cast<double>(k + 1);
    series += kBernoulli[k] / n * p;
    p *= inv2;
  }
  Complex result = std::log(x) - 0.5 * inv - series - shift + reflection;
  if (is_real(x) && reflection.imag() == 0.0) result.imag(0.0);
  return result;
}

Complex digamma_diff_sum(Complex mu, int n) {
  if (n < 0) throw DomainError("digamma_diff_sum: n must be nonnegative");
  const Complex mu2 = mu * mu;
  Complex sum = 0.0;
  for (int l = 1; l <= n; ++l) {
    const double h = l - 0.5;
    const Complex den = mu2 - h * h;
    if (std::abs(den) <= kPoleTolerance) {
      throw PoleError("digamma_diff_sum: mu = +-(l - 1/2) makes a summand singular");
    }
    sum += 1.0 / den;
  }
  return 2.0 * mu * sum;
}

Complex pochhammer(Complex a, int n) {
  Complex p = 1.0;
  for (int k = 0; k < n; ++k) p *= a + static_cast<double>(k);
  return p;
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace lpd
