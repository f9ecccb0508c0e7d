#include "hypergeometric.hpp"

#include <cmath>
#include <limits>

#include "lpd/scalars.hpp"

namespace lpd::detail {

SeriesSum hyp2f1_regularized(Complex a, Complex b, Complex c, Complex x, int max_terms) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  if (!(std::abs(x) < 1.0)) throw DomainError("hyp2f1: series argument outside the unit disk");

  // For c = 0, -1, ... the first 1 - c terms vanish; start where Gamma(c + k) = Gamma(1).
  int k = 0;
  Complex term;
  const double cr = std::nearbyint(c.real());
  if (c.imag() == 0.0 && cr <= 0.0 && std::abs(c.real() - cr) <= 1e-15) {
    k = static_cast<int>(1.0 - cr);
    term = pochhammer(a, k) * pochhammer(b, k) * std::pow(x, k) / factorial(k);
  } else {
    term = recip_gamma(c);
  }

  SeriesSum s;
  s.value = term;
  s.abs_sum = std::abs(term);
  s.weighted_sum = s.abs_sum;
  s.tail = std::abs(term);
  int small_run = 0;
  for (int n = 0; n < max_terms; ++n, ++k) {
    const Complex ak = a + static_cast<double>(k);
    const Complex bk = b + static_cast<double>(k);
    if (ak == 0.0 || bk == 0.0) {  // terminating polynomial
      s.tail = 0.0;
      s.terms = n + 1;
      return s;
    }
    const Complex ratio = ak * bk / ((k + 1.0) * (c + static_cast<double>(k))) * x;
    term *= ratio;
    s.value += term;
    const double at = std::abs(term);
    s.abs_sum += at;
    s.weighted_sum += std::sqrt(n + 2.0) * at;
    // Once the ratio is below one and shrinking toward |x|, the rest is
    // bounded by a geometric tail.
    const double r = std::abs(ratio);
    s.tail = r < 1.0 ? at * r / (1.0 - r) : at;
    if (r < 1.0 && s.tail <= 0.5 * kEps * std::abs(s.value)) {
      if (++small_run >= 3) {
        s.terms = n + 1;
        return s;
      }
    } else {
      small_run = 0;
    }
    if (term == 0.0) {
      s.terms = n + 1;
      return s;
    }
  }
  throw ConvergenceError("hyp2f1: series did not converge within the term budget");
}

}  // namespace lpd::detail
