#include "quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace lpd::detail {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  bool mapped = false;  // integrand is g(v) on the substituted near-zero range
  Complex value{};
  double err = 0.0;
};

using Fn = std::function<Complex(double)>;

Complex checked(const Fn& f, double x) {
  const Complex v = f(x);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw ConvergenceError("quadrature: integrand is not finite at t = " + std::to_string(x));
  }
  return v;
}

void gk15(const Fn& f, Panel& p) {
  const double center = 0.5 * (p.a + p.b);
  const double half = 0.5 * (p.b - p.a);
  const Complex fc = checked(f, center);
  Complex resk = fc * kWgk[7];
  Complex resg = fc * kWg[3];
  double resabs = std::abs(fc) * kWgk[7];
  std::array<Complex, 7> f1{};
  std::array<Complex, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = checked(f, center - dx);
    f2[j] = checked(f, center + dx);
    const Complex sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const Complex mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

  resk *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg * half));
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  p.value = resk;
  p.err = err;
}

}  // namespace

double envelope_tail_cut(double decay, double q, double ratio) {
  // log of the envelope relative to its value at t_ref
  const double t_ref = std::max(q, 1.0) / decay;
  const double target = std::log(ratio);
  auto rel = [&](double t) { return q * std::log(t / t_ref) - decay * (t - t_ref); };
  double lo = t_ref;
  double hi = 2.0 * t_ref;
  while (rel(hi) > target) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (rel(mid) > target ? lo : hi) = mid;
  }
  return hi;
}

QuadOutcome integrate_semi_infinite(const SemiInfiniteIntegrand& in, const QuadControl& ctl) {
  if (!(in.power_at_zero > -1.0)) throw DomainError("quadrature: integrand is not integrable at 0");
  if (!(in.decay > 0.0)) throw DomainError("quadrature: integrand does not decay at infinity");

  QuadOutcome out;
  const double T = ctl.tail_cut ? *ctl.tail_cut : envelope_tail_cut(in.decay, in.power_at_infinity);
  out.tail_cut = T;
  const double T0 = std::min(1.0, 0.25 * T);

  // Near zero: t = T0 v^p makes the mapped integrand bounded up to logarithms.
  const double p = std::max(1.0, 1.0 / (in.power_at_zero + 1.0));
  const Fn g = [&](double v) {
    if (v <= 0.0) return Complex{};
    const double t = T0 * std::pow(v, p);
    return in.f(t) * (T0 * p * std::pow(v, p - 1.0));
  };

  std::vector<Panel> panels;
  Complex total{};
  double total_err = 0.0;
  auto add = [&](Panel pn) {
    gk15(pn.mapped ? g : in.f, pn);
    total += pn.value;
    total_err += pn.err;
    panels.push_back(pn);
  };

  for (double a = T0; a < T; a *= 2.0) add(Panel{a, std::min(2.0 * a, T), false});

  // Graded panels [b/2, b] toward v = 0; the rest is bounded by g(b) b.
  Complex remainder{};
  double remainder_err = 0.0;
  double b = 1.0;
  for (int j = 0;; ++j) {
    add(Panel{0.5 * b, b, true});
    b *= 0.5;
    const double mag = std::abs(panels.back().value);
    if (j >= 4 && mag <= 1e-3 * ctl.rel_tol * std::abs(total)) {
      remainder = g(b) * b;
      remainder_err = std::abs(remainder) + mag;
      break;
    }
    if (j >= 1000) throw ConvergenceError("quadrature: graded panels near 0 did not converge");
  }

  auto tolerance = [&] { return std::max(ctl.rel_tol * std::abs(total + remainder), 1e-300); };
  while (total_err + remainder_err > tolerance()) {
    if (out.subdivisions >= ctl.max_subdivisions) {
      throw ConvergenceError("quadrature: subdivision budget of " + std::to_string(ctl.max_subdivisions) +
                             " exhausted (error estimate " + std::to_string(total_err + remainder_err) + ")");
    }
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel& x, const Panel& y) { return x.err < y.err; });
    Panel left = *worst;
    Panel right = *worst;
    const double mid = 0.5 * (worst->a + worst->b);
    left.b = mid;
    right.a = mid;
    total -= worst->value;
    total_err -= worst->err;
    panels.erase(worst);
    add(left);
    add(right);
    ++out.subdivisions;
    // rebuild the sums to keep cancellation from drifting
    total = {};
    total_err = 0.0;
    for (const auto& pn : panels) {
      total += pn.value;
      total_err += pn.err;
    }
  }

  // Beyond the cut: |f(T)| times the envelope integral.
  const double q = in.power_at_infinity;
  const double rate = in.decay - std::max(q, 0.0) / T;
  const double tail = std::abs(in.f(T)) / (rate > 0.0 ? rate : in.decay);

  out.value = total + remainder;
  out.err = total_err + remainder_err + tail;
  return out;
}

}  // namespace lpd::detail
