// Gamma-family scalar functions on the complex plane.
//
// Accuracy targets: >= 13 significant digits on the real axis in [0.5, 171];
// complex arguments are supported in the box |Im x| <= 50, Re x in [-50, 171].
#pragma once

#include "lpd/types.hpp"

namespace lpd {

/// Absolute distance to a Gamma pole below which PoleError is raised.
inline constexpr double kPoleTolerance = 1e-12;

/// True when x lies within `tol` of one of 0, -1, -2, ...
bool near_nonpositive_integer(Complex x, double tol = kPoleTolerance);

/// Principal-branch log Gamma: exp(gamma_ln(x)) == Gamma(x), Im in (-pi, pi].
/// Throws PoleError at nonpositive integers.
Complex gamma_ln(Complex x);

/// Gamma(x). Throws PoleError at nonpositive integers.
Complex gamma(Complex x);

/// 1/Gamma(x), entire. Exactly 0 at the poles of Gamma.
Complex recip_gamma(Complex x);

/// psi(x) = Gamma'(x)/Gamma(x). Throws PoleError at nonpositive integers.
Complex digamma(Complex x);

/// psi(mu + n + 1/2) - psi(mu - n + 1/2) as the finite sum
/// 2 mu sum_{l=1}^{n} [mu^2 - (l - 1/2)^2]^{-1}.
/// Throws PoleError when a summand denominator vanishes.
Complex digamma_diff_sum(Complex mu, int n);

/// sin(pi x) and cos(pi x) with the argument reduced first, so they are
/// exact zeros at integers / half-integers respectively.
Complex sinpi(Complex x);
Complex cospi(Complex x);

/// e^{i pi a}; exactly on the unit circle for real integer / half-integer a.
Complex exp_i_pi(Complex a);

/// (a)_n = a (a+1) ... (a+n-1).
Complex pochhammer(Complex a, int n);

double factorial(int n);

}  // namespace lpd
