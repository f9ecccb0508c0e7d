// Internal: regularized Gauss hypergeometric series.
#pragma once

#include "lpd/types.hpp"

namespace lpd::detail {

struct SeriesSum {
  Complex value{};
  double abs_sum = 0.0;       // sum of |terms|, for rounding estimates
  double weighted_sum = 0.0;  // sum of sqrt(k+1) |term_k|: term k carries k rounded ratio products
  double tail = 0.0;          // bound on the neglected terms
  int terms = 0;
};

/// sum_k (a)_k (b)_k / (Gamma(c + k) k!) x^k for |x| < 1. Entire in c.
SeriesSum hyp2f1_regularized(Complex a, Complex b, Complex c, Complex x, int max_terms);

}  // namespace lpd::detail
