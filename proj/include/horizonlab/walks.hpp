#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "horizonlab/common.hpp"
#include "horizonlab/priors.hpp"
#include "horizonlab/quadrature.hpp"

namespace horizonlab {

// Machinery for the two-action game built on the symmetric +/-1 random walk
// Y_s = 2 B_s - s with B_s ~ Binomial(s, 1/2).
//
// With delta = |M_2 - M_1| >= 1, the fixed-horizon minimax weight on the
// leading action when s = T - t rounds remain after this one is
//
//   P_lead(s) = 1/2 + 1/2 D(s),   D(s) = Pr[-delta < Y_s <= delta],
//
// so conditional averages over a horizon prior reduce to weighted sums
// of window-occupation probabilities of the walk.

namespace detail {

// Regularized incomplete beta I_x(a, b) by the standard continued fraction.
inline double ibeta_cf(double a, double b, double x) {
  const double eps = 1e-15, fpmin = 1e-290;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::abs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 20000; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) break;
  }
  return h;
}

inline double ibeta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * ibeta_cf(a, b, x) / a;
  return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(b) - std::lgamma(a) +
                        b * std::log1p(-x) + a * std::log(x)) *
                   ibeta_cf(b, a, 1.0 - x) / b;
}

}  // namespace detail

// Pr[Binomial(s, 1/2) >= k].
inline double binom_half_upper_tail(std::int64_t s, std::int64_t k) {
  if (k <= 0) return 1.0;
  if (k > s) return 0.0;
  return detail::ibeta(static_cast<double>(k), static_cast<double>(s - k + 1), 0.5);
}

// ln Pr[B_s = k] for the half binomial; valid for real s >= k >= 0 via the
// gamma-function extension.
inline double log_binom_half_pmf(double s, double k) {
  return std::lgamma(s + 1.0) - std::lgamma(k + 1.0) - std::lgamma(s - k + 1.0) -
         s * std::log(2.0);
}

// D(s) = Pr[-delta < Y_s <= delta] for integer s >= 0, delta >= 1.
inline double walk_window_mass(std::int64_t s, std::int64_t delta) {
  if (delta < 1) throw std::invalid_argument("delta must be >= 1");
  if (s <= 0) return 1.0;
  if (s > (std::int64_t{1} << 27))  // normal limit; only reachable from sampled far tails
    return std::erf(static_cast<double>(delta) / std::sqrt(2.0 * static_cast<double>(s)));
  // Pr[Y > delta] = Pr[B >= floor((s+delta)/2) + 1],
  // Pr[Y <= -delta] = Pr[Y >= delta] = Pr[B >= ceil((s+delta)/2)].
  const std::int64_t k_gt = (s + delta) / 2 + 1;
  const std::int64_t k_ge = (s + delta + 1) / 2;
  return 1.0 - binom_half_upper_tail(s, k_gt) - binom_half_upper_tail(s, k_ge);
}

// Fixed-horizon minimax weight on the leading action in the two-action game
// at cumulative gap delta >= 0 with s = T - t rounds remaining after the
// current one. O(1) in T.
inline double two_action_lead_weight(std::int64_t s, std::int64_t delta) {
  if (delta == 0) return 0.5;
  return 0.5 + 0.5 * walk_window_mass(s, delta);
}

namespace detail {

// pmf of the walk at a fixed site y, advanced along its parity class with
// O(1) multiplicative updates. Values passing through the subnormal range
// are carried with a power-of-two offset so they re-emerge undamaged.
class SitePmfWalker {
 public:
  explicit SitePmfWalker(std::int64_t y) : y_(y) {}

  // pmf(s, y); s must be queried in nondecreasing order.
  double at(std::int64_t s) {
    if (s < y_ || ((s - y_) & 1)) return 0.0;
    if (s_ < 0) init(s);
    while (s_ < s) step();
    return offset_ == 0 ? val_ : val_ * std::ldexp(1.0, offset_);
  }

 private:
  void init(std::int64_t s) {
    s_ = y_;
    val_ = 1.0;
    offset_ = 0;
    // pmf(y, y) = 2^-y
    int off = static_cast<int>(-y_);
    while (off < -500) {
      offset_ -= 500;
      off += 500;
    }
    val_ = std::ldexp(1.0, off);
    while (s_ < s) step();
  }

  void step() {
    const double k = static_cast<double>((s_ + y_) / 2);
    const double sd = static_cast<double>(s_);
    val_ *= (sd + 1.0) * (sd + 2.0) / (4.0 * (k + 1.0) * (sd + 1.0 - k));
    s_ += 2;
    if (val_ < 1e-150 && val_ > 0.0) {
      val_ = std::ldexp(val_, 500);
      offset_ -= 500;
    } else if (offset_ < 0 && val_ > 1e150) {
      val_ = std::ldexp(val_, -500);
      offset_ += 500;
    }
  }

  std::int64_t y_;
  std::int64_t s_ = -1;
  double val_ = 0.0;
  int offset_ = 0;
};

}  // namespace detail

// E over the pretend prior of the fixed-horizon two-action minimax weights:
//
//   lead weight = 1/2 + 1/2 sum_{s>=0} Pr[T = t+s | T >= t] D(s).
//
// The sum is taken exactly (O(1) per term via the boundary-flux recurrence
// D(s+1) = D(s) + (pmf_s(delta+1) - pmf_s(delta-1)) / 2) out to a window
// end chosen so that the certified bracket on the remaining tail is below
// tail_tol; the tail itself is closed with per-site integral midpoints.
inline double pretend_two_action_lead_weight(const DiscretePowerLawPrior& prior,
                                             std::int64_t t, std::int64_t delta,
                                             double tail_tol = 1e-9) {
  if (delta == 0) return 0.5;
  if (delta < 0) throw std::invalid_argument("delta must be >= 0");
  const double d = prior.exponent();
  const double scaled_tail_t = 1.0 / prior.stop_prob(t);  // sum_{x>=t} (x/t)^-d

  // If essentially no conditional mass lies past the first s where the walk
  // can leave the window, every reachable D(s) is 1.
  if (prior.conditional_tail_upper_bound(static_cast<double>(t + delta), t) <= tail_tol)
    return 1.0;

  detail::SitePmfWalker upper(delta + 1), lower(delta - 1);
  double window_sum = 0.0;
  double d_cur = 1.0;
  std::int64_t s = 0;
  const std::int64_t hard_cap = std::int64_t{1} << 25;

  auto term_weight = [&](std::int64_t ss) {
    return std::pow(static_cast<double>(t + ss) / static_cast<double>(t), -d) / scaled_tail_t;
  };

  std::int64_t window_end = std::max<std::int64_t>(4 * delta * delta, 4096);
  while (true) {
    for (; s < window_end; ++s) {
      window_sum += term_weight(s) * d_cur;
      d_cur += 0.5 * (upper.at(s) - lower.at(s));
    }
    // Certified residual of the per-site integral midpoints at this window
    // end: about (number of sites) * g(window_end) / 2.
    const double pmf_cap = std::sqrt(2.0 / (M_PI * static_cast<double>(window_end)));
    const double resid = static_cast<double>(delta + 1) * term_weight(window_end) * pmf_cap;
    if (resid <= 0.5 * tail_tol || window_end >= hard_cap) break;
    window_end = std::min(hard_cap, window_end * 2);
  }

  // Tail beyond the window: D(s) = sum over sites y in (-delta, delta] of
  // pmf(s, y); fold symmetric sites together and integrate each parity
  // class by the midpoint of its integral bracket.
  const double ln2 = std::log(2.0);
  double tail_sum = 0.0;
  for (std::int64_t y = 0; y <= delta; ++y) {
    const double mult = (y == 0 || y == delta) ? 1.0 : 2.0;
    std::int64_t a = window_end;
    if (((a - y) & 1) != 0) ++a;  // first admissible lattice point >= window_end
    auto g = [&](double ss) {
      const double lpmf = std::lgamma(ss + 1.0) - std::lgamma((ss + y) / 2.0 + 1.0) -
                          std::lgamma((ss - y) / 2.0 + 1.0) - ss * ln2;
      return std::pow((static_cast<double>(t) + ss) / static_cast<double>(t), -d) /
             scaled_tail_t * std::exp(lpmf);
    };
    const double integral = integrate_to_infinity(g, static_cast<double>(a), 1e-10, 1e-18);
    tail_sum += mult * (0.5 * integral + 0.5 * g(static_cast<double>(a)));
  }

  return 0.5 + 0.5 * (window_sum + tail_sum);
}

// Same conditional average under a uniform pretend prior on {lo..hi}; kept
// as a negative-example fixture (uniform pretend horizons are uninformative).
inline double uniform_pretend_two_action_lead_weight(std::int64_t lo, std::int64_t hi,
                                                     std::int64_t t, std::int64_t delta) {
  if (delta == 0) return 0.5;
  const std::int64_t first = std::max(lo, t);
  if (first > hi) throw std::invalid_argument("conditioning beyond prior support");
  detail::SitePmfWalker upper(delta + 1), lower(delta - 1);
  double d_cur = 1.0;
  double acc = 0.0;
  for (std::int64_t s = 0; s <= hi - t; ++s) {
    if (t + s >= first) acc += d_cur;
    d_cur += 0.5 * (upper.at(s) - lower.at(s));
  }
  return 0.5 + 0.5 * acc / static_cast<double>(hi - first + 1);
}

}  // namespace horizonlab
