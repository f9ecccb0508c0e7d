#include "lpd/bessel.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lpd/scalars.hpp"

namespace lpd {
namespace {

using std::numbers::pi;

// Taylor coefficients of 1/Gamma(1 + x) about 0.
constexpr std::array<double, 29> kRecipGammaTaylor = {
    1.0,
    0.577215664901532860607,
    -0.655878071520253881077,
    -0.042002635034095235529,
    0.166538611382291489502,
    -0.0421977345555443367482,
    -0.00962197152787697356211,
    0.0072189432466630995424,
    -0.00116516759185906511211,
    -0.000215241674114950972816,
    0.000128050282388116186153,
    -0.0000201348547807882386557,
    -0.00000125049348214267065735,
    0.00000113302723198169588237,
    -2.05633841697760710345e-7,
    6.11609510448141581786e-9,
    5.00200764446922293006e-9,
    -1.18127457048702014459e-9,
    1.04342671169110051049e-10,
    7.78226343990507125405e-12,
    -3.69680561864220570819e-12,
    5.10037028745447597902e-13,
    -2.05832605356650678322e-14,
    -5.34812253942301798237e-15,
    1.22677862823826079016e-15,
    -1.18125930169745876951e-16,
    1.18669225475160033258e-18,
    1.41238065531803178156e-18,
    -2.29874568443537020659e-19,
};

// Temme's gamma auxiliaries for |x| <= 1/2:
//   gam1 = (1/Gamma(1-x) - 1/Gamma(1+x)) / (2x),  gam2 = (1/Gamma(1-x) + 1/Gamma(1+x)) / 2
struct TemmeGammas {
  double gam1, gam2, gampl, gammi;
};

TemmeGammas temme_gammas(double x) {
  double odd = 0.0;   // sum over odd j of g_j x^{j-1}
  double even = 0.0;  // sum over even j of g_j x^j
  double p = 1.0;     // x^{j} for even j, x^{j-1} for odd j
  for (std::size_t j = 0; j < kRecipGammaTaylor.size(); ++j) {
    if (j % 2 == 0) {
      even += kRecipGammaTaylor[j] * p;
    } else {
      odd += kRecipGammaTaylor[j] * p;
      p *= x * x;
    }
  }
  TemmeGammas g{};
  g.gam1 = -odd;
  g.gam2 = even;
  g.gampl = g.gam2 - x * g.gam1;  // 1/Gamma(1+x)
  g.gammi = g.gam2 + x * g.gam1;  // 1/Gamma(1-x)
  return g;
}

struct ScaledIK {
  double i;  // e^{-x} I_nu(x)
  double k;  // e^{x} K_nu(x)
};

// Scaled I_nu, K_nu for nu >= 0, x > 0: continued fraction for I'/I, Temme
// series (x < 2) or Steed's continued fraction (x >= 2) for K, Wronskian for I.
ScaledIK bessel_ik_scaled(double nu, double x) {
  constexpr int kMaxIter = 100000;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kFpMin = std::numeric_limits<double>::min() / kEps;
  constexpr double kXMin = 2.0;

  const int nl = static_cast<int>(nu + 0.5);
  const double xmu = nu - nl;
  const double xmu2 = xmu * xmu;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;

  double h = nu * xi;
  if (h < kFpMin) h = kFpMin;
  double b = xi2 * nu;
  double d = 0.0;
  double c = h;
  int it = 0;
  for (; it < kMaxIter; ++it) {
    b += xi2;
    d = 1.0 / (b + d);
    c = b + 1.0 / c;
    const double del = c * d;
    h = del * h;
    if (std::abs(del - 1.0) < kEps) break;
  }
  if (it >= kMaxIter) throw ConvergenceError("bessel: CF1 did not converge");

  double ril = kFpMin;
  double ripl = h * ril;
  const double ril1 = ril;
  double fact = nu * xi;
  for (int l = nl - 1; l >= 0; --l) {
    const double ritemp = fact * ril + ripl;
    fact -= xi;
    ripl = fact * ritemp + ril;
    ril = ritemp;
  }
  const double f = ripl / ril;

  double rkmu = 0.0;  // e^{x} K_xmu
  double rk1 = 0.0;   // e^{x} K_{xmu+1}
  if (x < kXMin) {
    const double x2 = 0.5 * x;
    const double pimu = pi * xmu;
    const double fact1 = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
    double dd = -std::log(x2);
    double e = xmu * dd;
    const double fact2 = std::abs(e) < kEps ? 1.0 : std::sinh(e) / e;
    const TemmeGammas g = temme_gammas(xmu);
    double ff = fact1 * (g.gam1 * std::cosh(e) + g.gam2 * fact2 * dd);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / g.gampl;
    double q = 0.5 / (e * g.gammi);
    double cc = 1.0;
    dd = x2 * x2;
    double sum1 = p;
    int i = 1;
    for (; i <= kMaxIter; ++i) {
      ff = (i * ff + p + q) / (i * static_cast<double>(i) - xmu2);
      cc *= dd / i;
      p /= i - xmu;
      q /= i + xmu;
      const double del = cc * ff;
      sum += del;
      const double del1 = cc * (p - i * ff);
      sum1 += del1;
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    if (i > kMaxIter) throw ConvergenceError("bessel: Temme series did not converge");
    const double ex = std::exp(x);
    rkmu = sum * ex;
    rk1 = sum1 * xi2 * ex;
  } else {
    b = 2.0 * (1.0 + x);
    d = 1.0 / b;
    double delh = d;
    h = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25 - xmu2;
    double q = a1;
    c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 1;
    for (; i < kMaxIter; ++i) {
      a -= 2 * i;
      c = -a * c / (i + 1.0);
      const double qnew = (q1 - b * q2) / a;
      q1 = q2;
      q2 = qnew;
      q += c * qnew;
      b += 2.0;
      d = 1.0 / (b + a * d);
      delh = (b * d - 1.0) * delh;
      h += delh;
      const double dels = q * delh;
      s += dels;
      if (std::abs(dels / s) < kEps) break;
    }
    if (i >= kMaxIter) throw ConvergenceError("bessel: CF2 did not converge");
    h = a1 * h;
    rkmu = std::sqrt(pi / (2.0 * x)) / s;
    rk1 = rkmu * (xmu + x + 0.5 - h) * xi;
  }
  const double rkmup = xmu * xi * rkmu - rk1;
  // Wronskian I K' - I' K = -1/x; with K scaled by e^{x}, I comes out scaled by e^{-x}.
  const double rimu = xi / (f * rkmu - rkmup);
  const double io = (rimu * ril1) / ril;
  for (int i = 1; i <= nl; ++i) {
    const double rktemp = (xmu + i) * xi2 * rk1 + rkmu;
    rkmu = rk1;
    rk1 = rktemp;
  }
  return {io, rkmu};
}

void check_args(double order, double t, const char* fn) {
  if (!(t > 0.0)) throw DomainError(std::string(fn) + ": argument must be positive");
  if (!std::isfinite(order) || std::abs(order) > kMaxBesselOrder) {
    throw DomainError(std::string(fn) + ": |order| must not exceed 60");
  }
}

}  // namespace

double bessel_i_scaled(double order, double t) {
  check_args(order, t, "bessel_i");
  const double nu = std::abs(order);
  const ScaledIK ik = bessel_ik_scaled(nu, t);
  if (order >= 0.0) return ik.i;
  // I_{-nu} = I_nu + (2/pi) sin(nu pi) K_nu
  const double s = sinpi(nu).real();
  if (s == 0.0) return ik.i;
  return ik.i + (2.0 / pi) * s * ik.k * std::exp(-2.0 * t);
}

double bessel_k_scaled(double order, double t) {
  check_args(order, t, "bessel_k");
  return bessel_ik_scaled(std::abs(order), t).k;
}

double bessel_i(double order, double t) {
  check_args(order, t, "bessel_i");
  if (t > kMaxBesselArgument) throw OverflowError("bessel_i: argument above 700 overflows");
  return bessel_i_scaled(order, t) * std::exp(t);
}

double bessel_k(double order, double t) {
  check_args(order, t, "bessel_k");
  return bessel_k_scaled(order, t) * std::exp(-t);
}

double dk_dorder_at_int_scaled(int m, Sign sign, double t) {
  if (!(t > 0.0)) throw DomainError("dk_dorder_at_int: argument must be positive");
  if (m < 0) throw DomainError("dk_dorder_at_int: m must be nonnegative");
  double sum = 0.0;
  for (int k = 0; k < m; ++k) {
    const double coeff = 1.0 / (factorial(k) * (m - k)) * std::pow(t, k - m) /
                         std::ldexp(1.0, k - m + 1);
    sum += coeff * bessel_k_scaled(k, t);
  }
  return to_int(sign) * factorial(m) * sum;
}

double dk_dorder_at_int(int m, Sign sign, double t) {
  return dk_dorder_at_int_scaled(m, sign, t) * std::exp(-t);
}

ScaledDI di_dorder_at_int_scaled(int n, Sign sign, double t) {
  if (!(t > 0.0)) throw DomainError("di_dorder_at_int: argument must be positive");
  if (n < 0) throw DomainError("di_dorder_at_int: n must be nonnegative");
  ScaledDI out;
  out.k_part = (n % 2 == 0 ? -1.0 : 1.0) * bessel_k_scaled(n, t);
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    const double alt = (n - k) % 2 == 0 ? 1.0 : -1.0;
    const double coeff =
        alt / (factorial(k) * (n - k)) * std::pow(t, k - n) / std::ldexp(1.0, k - n + 1);
    sum += coeff * bessel_i_scaled(k, t);
  }
  out.i_part = to_int(sign) * factorial(n) * sum;
  return out;
}

double di_dorder_at_int(int n, Sign sign, double t) {
  if (t > kMaxBesselArgument) throw OverflowError("di_dorder_at_int: argument above 700 overflows");
  const ScaledDI s = di_dorder_at_int_scaled(n, sign, t);
  return s.k_part * std::exp(-t) + s.i_part * std::exp(t);
}

}  // namespace lpd
