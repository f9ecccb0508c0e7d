// Associated Legendre functions P_nu^mu(z), Q_nu^mu(z) off the cut [-1, 1].
//
// Q uses the Hobson convention (complex-valued off the cut, with the
// e^{i mu pi} factor), the convention under which
//   P_{-mu-1/2}^{-nu-1/2}(z / sqrt(z^2-1)) = sqrt(2/pi) (z^2-1)^{1/4} e^{-i mu pi} Q_nu^mu(z) / Gamma(nu+mu+1)
// holds. Powers (z^2-1)^a are exp(a log(z-1) + a log(z+1)) with principal
// logarithms: continuous off (-inf, 1] and positive on (1, inf). On the real
// ray z < -1 the value on the upper side of the cut is returned.
#pragma once

#include "lpd/types.hpp"

namespace lpd {

/// Parameter box for nu and mu (Gamma-ratio overflow control).
inline constexpr double kMaxLegendreParameter = 30.0;

/// Degree nu, order mu, argument z.
struct ParamPoint {
  Complex nu{};
  Complex mu{};
  Complex z{};

  /// Throws DomainError when z lies on [-1, 1] or a parameter is out of the box.
  void validate() const;
};

/// True when z is on the real segment [-1, 1] (tolerance 1e-14).
bool on_cut(Complex z);

EvalResult legendre_p(const ParamPoint& p);
EvalResult legendre_q(const ParamPoint& p);

inline Complex legendre_p(Complex nu, Complex mu, Complex z) { return legendre_p({nu, mu, z}).value; }
inline Complex legendre_q(Complex nu, Complex mu, Complex z) { return legendre_q({nu, mu, z}).value; }

/// e^{-i mu pi} Q_nu^mu(z) / Gamma(nu + mu + 1): entire in nu and mu.
EvalResult legendre_q_scaled(const ParamPoint& p);

/// (z^2 - 1)^alpha on the principal branch described above.
Complex z2m1_pow(Complex z, Complex alpha);

/// w(z) = log coth(z/2) on the strip -pi < Im z < pi, with the ray
/// Re z <= 0, Im z = 0 removed. Exchanges cosh <-> coth and sinh <-> 1/sinh.
Complex log_coth_map(Complex z);

/// z / sqrt(z^2 - 1); an involution on Re z > 0, real and > 1 for real z > 1.
Complex whipple_argument(Complex z);

/// P_{-mu-1/2}^{-nu-1/2}(z/sqrt(z^2-1)) obtained from Q_nu^mu(z). Requires Re z > 0.
EvalResult whipple_q_to_p(Complex nu, Complex mu, Complex z);

/// Q_nu^mu(z) obtained from P_{-mu-1/2}^{-nu-1/2}(z/sqrt(z^2-1)). Requires Re z > 0.
EvalResult whipple_p_to_q(Complex nu, Complex mu, Complex z);

/// P_nu^{-mu}(z) from P_nu^mu(z) and Q_nu^mu(z) through
///   P_nu^{-mu} = Gamma(nu-mu+1)/Gamma(nu+mu+1) [P_nu^mu - (2/pi) e^{-i mu pi} sin(mu pi) Q_nu^mu].
EvalResult negative_order_p(Complex nu, Complex mu, Complex z);

/// The same connection applied to caller-supplied values of P_nu^mu(z) and Q_nu^mu(z).
Complex negative_order_p_from(Complex nu, Complex mu, Complex p_mu, Complex q_mu);

}  // namespace lpd
