#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "horizonlab/hedge_values.hpp"

namespace horizonlab {

// Leading terms of the regret guarantees attached to each adaptive learner.
// Acceptance checks add explicit slack for the lower-order remainders.
enum class BoundKind {
  pretend_hedge,   // Gamma(d-3/2)/Gamma(d) (d-1)^2 c_N sqrt(pi T)
  ball_adaptive,   // same shape without c_N; pi sqrt(T) at d = 2
  fpl,             // ((d-1)/(sqrt(b)(d-1/2)) + sqrt(b)(d-1)^2/(d-3/2)) 2 sqrt(TN)
  exp_weights,     // (sqrt(b)(d-1)/(4(d-1/2)) + (d-1)/((d-3/2)sqrt(b))) sqrt(T ln N)
  first_order,     // 3(d-7/6)(d-1)/((d-3/2)(d-1/2)) sqrt(m* ln N)
                   //   + (1 + (d-1) ln(m*+1)) ln N
  ogd_ball,        // 2 sqrt(2T)
};

struct BoundSpec {
  BoundKind kind;
  double d = 2.0;
  double b = 1.0;
  int n = 2;
};

inline double gamma_ratio(double d) {
  if (!(d > 1.5)) throw std::domain_error("gamma ratio requires d > 3/2");
  return std::exp(std::lgamma(d - 1.5) - std::lgamma(d));
}

inline double optimal_exp_weights_b(double d) {
  if (!(d > 1.5)) throw std::domain_error("d must exceed 3/2");
  return (4.0 * d - 2.0) / (d - 1.5);
}

inline double optimal_fpl_d() { return 1.0 + std::sqrt(3.0) / 2.0; }

inline double optimal_fpl_b(double d) {
  if (!(d > 1.5)) throw std::domain_error("d must exceed 3/2");
  return (d - 1.5) / ((d - 0.5) * (d - 1.0));
}

inline double optimal_first_order_d() { return 2.5 + std::sqrt(2.0); }

// horizon_or_mstar is T_s for horizon-type bounds and m* for first_order.
inline double eval_bound(const BoundSpec& spec, double horizon_or_mstar) {
  const double d = spec.d, b = spec.b;
  const double x = horizon_or_mstar;
  if (x < 0.0) throw std::domain_error("horizon/m* must be nonnegative");
  switch (spec.kind) {
    case BoundKind::pretend_hedge:
      if (!(d > 1.5)) throw std::domain_error("d must exceed 3/2");
      return gamma_ratio(d) * (d - 1.0) * (d - 1.0) * c_n(spec.n) * std::sqrt(M_PI * x);
    case BoundKind::ball_adaptive:
      if (!(d > 1.5)) throw std::domain_error("d must exceed 3/2");
      return gamma_ratio(d) * (d - 1.0) * (d - 1.0) * std::sqrt(M_PI * x);
    case BoundKind::fpl:
      if (!(d > 1.5) || !(b > 0.0)) throw std::domain_error("need d > 3/2 and b > 0");
      return ((d - 1.0) / (std::sqrt(b) * (d - 0.5)) +
              std::sqrt(b) * (d - 1.0) * (d - 1.0) / (d - 1.5)) *
             2.0 * std::sqrt(x * spec.n);
    case BoundKind::exp_weights:
      if (!(d > 1.5) || !(b > 0.0)) throw std::domain_error("need d > 3/2 and b > 0");
      return (std::sqrt(b) * (d - 1.0) / (4.0 * (d - 0.5)) +
              (d - 1.0) / ((d - 1.5) * std::sqrt(b))) *
             std::sqrt(x * std::log(static_cast<double>(spec.n)));
    case BoundKind::first_order: {
      if (!(d > 1.5)) throw std::domain_error("d must exceed 3/2");
      const double ln_n = std::log(static_cast<double>(spec.n));
      return 3.0 * (d - 7.0 / 6.0) * (d - 1.0) / ((d - 1.5) * (d - 0.5)) *
                 std::sqrt(x * ln_n) +
             (1.0 + (d - 1.0) * std::log(x + 1.0)) * ln_n;
    }
    case BoundKind::ogd_ball:
      return 2.0 * std::sqrt(2.0 * x);
  }
  throw std::logic_error("unknown bound kind");
}

}  // namespace horizonlab
