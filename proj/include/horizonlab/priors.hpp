#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <mutex>
#include <random>
#include <unordered_map>

#include "horizonlab/common.hpp"
#include "horizonlab/quadrature.hpp"

namespace horizonlab {

class divergence_error : public std::domain_error {
 public:
  explicit divergence_error(const std::string& what) : std::domain_error(what) {}
};

// Caller-declared growth bound |g(x)| <= scale * x^degree, used to bound
// truncation tails of conditional expectations. Integrability against a
// power-law tail requires degree < d - 1; the module trusts the declaration.
struct GrowthEnvelope {
  double scale = 1.0;
  double degree = 0.0;
};

namespace detail {

// sum_{n >= t} (n / t)^{-d}, evaluated as a partial sum plus a remainder
// bracketed between the trapezoid and midpoint integral envelopes (both
// valid for convex decreasing integrands). The midpoint of the bracket is
// returned once its half-width drops below 1e-12 relative. Scaling by t^d
// keeps every term O(1) even for very large d.
inline double scaled_power_tail(double d, double t) {
  const double inv_t = 1.0 / t;
  auto f = [&](double x) { return std::pow(x * inv_t, -d); };
  auto integral_from = [&](double a) {
    // int_a^inf (x/t)^(-d) dx = t * (a/t)^(1-d) / (d-1)
    return t * std::pow(a * inv_t, 1.0 - d) / (d - 1.0);
  };
  double partial = 0.0;
  double x = t;
  for (int iter = 0;; ++iter) {
    const double lower = integral_from(x) + 0.5 * f(x);
    const double upper = integral_from(x - 0.5);
    const double width = upper - lower;
    if (width <= 2e-12 * (partial + lower) || iter > 50'000'000)
      return partial + 0.5 * (lower + upper);
    partial += f(x);
    x += 1.0;
  }
}

}  // namespace detail

// Discrete power-law horizon distribution: Pr[T = t] proportional to t^-d on
// {start, start+1, ...} with d > 3/2.
class DiscretePowerLawPrior {
 public:
  explicit DiscretePowerLawPrior(double d, std::int64_t start = 1) : d_(d), start_(start) {
    if (!(d > 1.5)) throw std::domain_error("power-law exponent must exceed 3/2");
    if (start < 1) throw std::invalid_argument("start must be >= 1");
  }

  double exponent() const { return d_; }
  std::int64_t start() const { return start_; }

  // Unnormalized tail sum S_t = sum_{n >= t} n^-d.
  double tail_mass(std::int64_t t) const {
    check_t(t);
    return std::pow(static_cast<double>(t), -d_) * scaled_tail(t);
  }

  // Pr[T = t | T >= t] = t^-d / S_t; bounded by (d-1)/t.
  double stop_prob(std::int64_t t) const {
    check_t(t);
    return 1.0 / scaled_tail(t);
  }

  // Pr[T = x | T >= t].
  double conditional_pmf(std::int64_t x, std::int64_t t) const {
    check_t(t);
    if (x < t) return 0.0;
    return std::pow(static_cast<double>(x) / static_cast<double>(t), -d_) / scaled_tail(t);
  }

  // Pr[T >= x | T >= t].
  double conditional_tail(std::int64_t x, std::int64_t t) const {
    check_t(t);
    if (x <= t) return 1.0;
    return std::pow(static_cast<double>(x) / static_cast<double>(t), -d_) * scaled_tail(x) /
           scaled_tail(t);
  }

  // Closed-form overestimate of Pr[T >= x | T >= t] (integral envelope);
  // cheap enough for per-term truncation checks in long summations.
  double conditional_tail_upper_bound(double x, std::int64_t t) const {
    check_t(t);
    if (x <= static_cast<double>(t)) return 1.0;
    const double td = static_cast<double>(t);
    const double envelope = td * std::pow((x - 0.5) / td, 1.0 - d_) / (d_ - 1.0);
    return envelope / scaled_tail(t);
  }

  // Exact inverse-CDF sample of T | T >= t. The CDF is walked term by term
  // near t where most of the mass lives; rare far-tail draws are placed by
  // inverting the integral-corrected tail formula.
  std::int64_t sample(std::mt19937_64& rng, std::int64_t t) const {
    check_t(t);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double u = unif(rng);
    // smallest x with S_{x+1} <= (1-u) S_t, in scaled units relative to t.
    const double target = (1.0 - u) * scaled_tail(t);
    double acc = 0.0;  // sum over {t..x} of ((x)/t)^-d
    const double st = scaled_tail(t);
    std::int64_t x = t;
    for (int k = 0; k < 4096; ++k) {
      acc += std::pow(static_cast<double>(x) / static_cast<double>(t), -d_);
      if (st - acc <= target) return x;
      ++x;
    }
    // Far tail: S_x ~ t^d [ (x-1/2)^{1-d}/(d-1) - (d/24)(x-1/2)^{-d-1} ].
    const double want = target * std::pow(static_cast<double>(t), -d_);  // absolute S_{x+1}
    auto s_approx = [&](double xx) {
      const double y = xx - 0.5;
      return std::pow(y, 1.0 - d_) / (d_ - 1.0) - d_ / 24.0 * std::pow(y, -d_ - 1.0);
    };
    double guess = std::pow(std::max(want, 1e-300) * (d_ - 1.0), -1.0 / (d_ - 1.0)) + 0.5;
    guess = std::min(guess, 4.0e18);
    std::int64_t xi = std::max<std::int64_t>(x, static_cast<std::int64_t>(std::floor(guess)) - 2);
    while (xi < (std::int64_t{1} << 62) && s_approx(static_cast<double>(xi + 1)) > want) ++xi;
    while (xi > x && s_approx(static_cast<double>(xi)) <= want) --xi;
    return xi;
  }

 private:
  void check_t(std::int64_t t) const {
    if (t < start_) throw std::invalid_argument("conditioning point below prior start");
  }

  double scaled_tail(std::int64_t t) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = scaled_memo_.find(t);
    if (it != scaled_memo_.end()) return it->second;
    const double v = detail::scaled_power_tail(d_, static_cast<double>(t));
    scaled_memo_.emplace(t, v);
    return v;
  }

  double d_;
  std::int64_t start_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::int64_t, double> scaled_memo_;
};

// Continuous power-law horizon density: f(T) proportional to T^-d on
// [start, infinity), d > 3/2. The adaptive ball learner uses d = 2.
class ContinuousPowerLawPrior {
 public:
  explicit ContinuousPowerLawPrior(double d, double start = 1.0) : d_(d), start_(start) {
    if (!(d > 1.5)) throw std::domain_error("power-law exponent must exceed 3/2");
    if (!(start >= 1.0)) throw std::invalid_argument("start must be >= 1");
  }

  double exponent() const { return d_; }
  double start() const { return start_; }

  // Unnormalized tail integral: int_t^inf T^-d dT = 1 / ((d-1) t^{d-1}).
  double tail_mass(double t) const {
    check_t(t);
    return std::pow(t, 1.0 - d_) / (d_ - 1.0);
  }

  double conditional_density(double x, double t) const {
    check_t(t);
    if (x < t) return 0.0;
    return (d_ - 1.0) * std::pow(t, d_ - 1.0) * std::pow(x, -d_);
  }

  // Inverse CDF of T | T >= t at u: t (1-u)^{-1/(d-1)}.
  double inverse_conditional_cdf(double u, double t) const {
    check_t(t);
    if (u < 0.0 || u >= 1.0) throw std::invalid_argument("u must be in [0, 1)");
    return t * std::pow(1.0 - u, -1.0 / (d_ - 1.0));
  }

  double sample(std::mt19937_64& rng, double t) const {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    return inverse_conditional_cdf(unif(rng), t);
  }

 private:
  void check_t(double t) const {
    if (t < start_) throw std::invalid_argument("conditioning point below prior start");
  }

  double d_;
  double start_;
};

// E[g(T) | T >= t] for the discrete prior. The sum is truncated once the
// envelope bound on the remaining tail drops below the tolerance; if the
// envelope decays too slowly for that to happen within the direct-summation
// cap, the remaining terms are closed by the midpoint-rule integral of the
// summand (treated as smooth there), whose own error is far below the
// envelope bound at that depth.
template <typename G>
double conditional_expectation(const DiscretePowerLawPrior& prior, std::int64_t t, const G& g,
                               const GrowthEnvelope& env, double rel_tol = 1e-8,
                               std::int64_t direct_cap = 1 << 20) {
  const double d = prior.exponent();
  if (!(env.degree < d - 1.0))
    throw divergence_error("growth envelope makes the conditional expectation diverge");
  const double e = d - env.degree;
  const double st = prior.tail_mass(t);
  double acc = 0.0;
  std::int64_t x = t;
  while (true) {
    acc += g(static_cast<double>(x)) * std::pow(static_cast<double>(x), -d);
    // remaining tail: sum_{n > x} scale n^{degree-d} <= scale int_x^inf ...
    const double bound = env.scale * std::pow(static_cast<double>(x), 1.0 - e) / (e - 1.0);
    const double value_scale =
        std::max(std::abs(acc), env.scale * std::pow(static_cast<double>(t), env.degree - d));
    if (bound <= rel_tol * value_scale) return acc / st;
    if (x - t >= direct_cap) {
      auto h = [&](double xx) { return g(xx) * std::pow(xx, -d); };
      acc += integrate_to_infinity(h, static_cast<double>(x) + 0.5, 0.1 * rel_tol);
      return acc / st;
    }
    ++x;
  }
}

// E[g(T) | T >= t] for the continuous prior by adaptive quadrature after the
// substitution u = t/T, which maps [t, inf) onto (0, 1].
template <typename G>
double conditional_expectation(const ContinuousPowerLawPrior& prior, double t, const G& g,
                               const GrowthEnvelope& env, double rel_tol = 1e-8) {
  const double d = prior.exponent();
  if (!(env.degree < d - 1.0))
    throw divergence_error("growth envelope makes the conditional expectation diverge");
  auto integrand = [&](double u) { return std::pow(u, d - 2.0) * g(t / u); };
  return (d - 1.0) * integrate(integrand, 0.0, 1.0, rel_tol, 1e-300);
}

}  // namespace horizonlab
