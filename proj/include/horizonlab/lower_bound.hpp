#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "horizonlab/common.hpp"
#include "horizonlab/hedge_values.hpp"

namespace horizonlab {

// Scaled-regret lower bound for the adversary-controlled horizon, N = 2.
// The restricted two-round adversary yields the recursion
//
//   G_{T0}(L) = L / S(T0)
//   G_t(L)    = min_p max{ (L + p)/S(t), G_{t+2}(L + 1/2 - p) }
//
// over even t, with S(t) the two-action game value. The bound reported for
// a truncation T0 is the limit-form partial sum
//
//   ( sum_{k=1}^{T0/2 - 1} S(2k) / 2^k )^{-1}  ->  sqrt(2)  as T0 -> inf.

inline double scaled_lower_bound(int t0) {
  if (t0 < 4 || t0 % 2 != 0) throw std::invalid_argument("T0 must be even and >= 4");
  double sum = 0.0;
  for (int k = 1; k <= t0 / 2 - 1; ++k)
    sum += two_action_game_value(2 * k) / std::pow(2.0, k);
  return 1.0 / sum;
}

// Cross-check mode: evaluates G_2(1/2) by backward induction. G_t is linear
// in L, so the recursion propagates coefficient pairs; the equalizing p is
// the min-max point because one branch increases and the other decreases
// in p.
inline double scaled_lower_bound_recursive(int t0) {
  if (t0 < 4 || t0 % 2 != 0) throw std::invalid_argument("T0 must be even and >= 4");
  double alpha = 1.0 / two_action_game_value(t0);  // G_{T0}(L) = alpha L + beta
  double beta = 0.0;
  for (int t = t0 - 2; t >= 2; t -= 2) {
    const double s = two_action_game_value(t);
    const double denom = 1.0 + alpha * s;
    beta = (alpha / 2.0 + beta) / denom;
    alpha = 2.0 * alpha / denom;
  }
  return alpha * 0.5 + beta;
}

// Central-binomial generating functions on [0, 1/4):
//   G(x) = sum_j binom(2j, j) x^j     = (1 - 4x)^{-1/2}
//   F(x) = sum_j j binom(2j, j) x^j   = 2x (1 - 4x)^{-3/2}
// The scaled-regret limit is 1 / F(1/8) = sqrt(2).
struct GeneratingFunctions {
  double g;
  double f;
};

inline GeneratingFunctions generating_function_check(double x) {
  if (x < 0.0 || x >= 0.25) throw std::domain_error("x must lie in [0, 1/4)");
  const double root = std::sqrt(1.0 - 4.0 * x);
  return {1.0 / root, 2.0 * x / (root * root * root)};
}

inline GeneratingFunctions generating_function_partial_sums(double x, int terms) {
  if (x < 0.0 || x >= 0.25) throw std::domain_error("x must lie in [0, 1/4)");
  double g = 0.0, f = 0.0;
  double term = 1.0;  // binom(2j, j) x^j at j = 0
  for (int j = 0; j < terms; ++j) {
    g += term;
    f += j * term;
    term *= 2.0 * (2 * j + 1) / static_cast<double>(j + 1) * x;
  }
  return {g, f};
}

}  // namespace horizonlab
