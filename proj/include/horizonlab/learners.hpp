#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "horizonlab/bounds.hpp"
#include "horizonlab/common.hpp"
#include "horizonlab/game_solver.hpp"
#include "horizonlab/hedge_values.hpp"
#include "horizonlab/priors.hpp"
#include "horizonlab/quadrature.hpp"
#include "horizonlab/walks.hpp"

namespace horizonlab {

// ---------------------------------------------------------------------------
// Interfaces. A learner is driven sequentially by one game: decide, then
// observe the round's loss object. Decisions may depend only on past
// observations (and the learner's own randomness).
// ---------------------------------------------------------------------------

struct HedgeLearner {
  virtual ~HedgeLearner() = default;
  virtual ActionDistribution decide() = 0;
  virtual void observe(const Vec& loss) = 0;
  virtual int actions() const = 0;
};

struct BallLearner {
  virtual ~BallLearner() = default;
  virtual Vec decide() = 0;
  virtual void observe(const Vec& adversary_point) = 0;
  virtual int dimension() const = 0;
};

// Deterministic decision rules that depend only on (round, cumulative loss
// vector). Exhaustive adversary search exploits this purity to memoize.
struct HedgePolicy {
  virtual ~HedgePolicy() = default;
  virtual ActionDistribution weights(int t, const Vec& m) const = 0;
  virtual int actions() const = 0;
  // Rounds the policy can be queried at; -1 means anytime.
  virtual int horizon() const { return -1; }
};

struct BallPolicy {
  virtual ~BallPolicy() = default;
  virtual Vec point(int t, const Vec& w_sum) const = 0;
  virtual int dimension() const = 0;
  virtual int horizon() const { return -1; }
};

class PolicyHedgeLearner : public HedgeLearner {
 public:
  explicit PolicyHedgeLearner(std::shared_ptr<const HedgePolicy> policy)
      : policy_(std::move(policy)), m_(static_cast<std::size_t>(policy_->actions()), 0.0) {}

  ActionDistribution decide() override {
    if (policy_->horizon() >= 0 && t_ > policy_->horizon())
      throw std::logic_error("learner stepped beyond its horizon");
    return policy_->weights(t_, m_);
  }

  void observe(const Vec& loss) override {
    if (loss.size() != m_.size()) throw std::invalid_argument("loss dimension mismatch");
    for (std::size_t i = 0; i < m_.size(); ++i) m_[i] += loss[i];
    ++t_;
  }

  int actions() const override { return policy_->actions(); }
  const HedgePolicy& policy() const { return *policy_; }
  int round() const { return t_; }
  const Vec& cumulative() const { return m_; }

 private:
  std::shared_ptr<const HedgePolicy> policy_;
  Vec m_;
  int t_ = 1;
};

class PolicyBallLearner : public BallLearner {
 public:
  explicit PolicyBallLearner(std::shared_ptr<const BallPolicy> policy)
      : policy_(std::move(policy)), w_(static_cast<std::size_t>(policy_->dimension()), 0.0) {}

  Vec decide() override {
    if (policy_->horizon() >= 0 && t_ > policy_->horizon())
      throw std::logic_error("learner stepped beyond its horizon");
    return policy_->point(t_, w_);
  }

  void observe(const Vec& w) override {
    if (w.size() != w_.size()) throw std::invalid_argument("dimension mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] += w[i];
    ++t_;
  }

  int dimension() const override { return policy_->dimension(); }

 private:
  std::shared_ptr<const BallPolicy> policy_;
  Vec w_;
  int t_ = 1;
};

// ---------------------------------------------------------------------------
// Hedge policies (basis-vector loss space).
// ---------------------------------------------------------------------------

// Plays the exact minimax weights for a known horizon T.
class FixedMinimaxHedgePolicy : public HedgePolicy {
 public:
  FixedMinimaxHedgePolicy(std::shared_ptr<HedgeValueTable> table, int t_horizon)
      : table_(std::move(table)), horizon_(t_horizon) {
    if (horizon_ < 1) throw std::invalid_argument("horizon must be >= 1");
  }

  ActionDistribution weights(int t, const Vec& m) const override {
    const int remaining = horizon_ - t + 1;
    if (remaining < 1) throw std::logic_error("queried beyond the fixed horizon");
    return table_->minimax_weights(m, remaining);
  }

  int actions() const override { return table_->actions(); }
  int horizon() const override { return horizon_; }

 private:
  std::shared_ptr<HedgeValueTable> table_;
  int horizon_;
};

// Minimax play pretending the current round is the last one.
class LastRoundHedgePolicy : public HedgePolicy {
 public:
  explicit LastRoundHedgePolicy(std::shared_ptr<HedgeValueTable> table)
      : table_(std::move(table)) {}

  ActionDistribution weights(int, const Vec& m) const override {
    return table_->minimax_weights(m, 1);
  }

  int actions() const override { return table_->actions(); }

 private:
  std::shared_ptr<HedgeValueTable> table_;
};

// Conditional average of fixed-horizon minimax weights over a finite prior.
class RandomHorizonHedgePolicy : public HedgePolicy {
 public:
  RandomHorizonHedgePolicy(std::shared_ptr<HedgeValueTable> table, FiniteHorizonPrior prior)
      : table_(std::move(table)), prior_(std::move(prior)) {}

  ActionDistribution weights(int t, const Vec& m) const override {
    if (t > prior_.max_support()) throw std::logic_error("queried beyond the prior's support");
    const double tail = prior_.tail_mass(t);
    ActionDistribution out{Vec(m.size(), 0.0)};
    for (std::size_t i = 0; i < prior_.support.size(); ++i) {
      const int horizon = prior_.support[i];
      if (horizon < t) continue;
      const double w = prior_.probs[i] / tail;
      const ActionDistribution p = table_->minimax_weights(m, horizon - t + 1);
      for (std::size_t j = 0; j < out.weights.size(); ++j) out.weights[j] += w * p.weights[j];
    }
    out.clamp();
    return out;
  }

  int actions() const override { return table_->actions(); }
  int horizon() const override { return prior_.max_support(); }

 private:
  std::shared_ptr<HedgeValueTable> table_;
  FiniteHorizonPrior prior_;
};

// Anytime Hedge: averages the fixed-horizon minimax weights over the
// power-law pretend prior Pr[T = t'] ~ 1/t'^d conditioned on T >= t.
//
// For N = 2 the average is computed through the random-walk window sums of
// walks.hpp: exact terms out to an adaptive cutoff plus certified integral
// tails, keeping every weight within 1e-9 of the infinite sum. For N >= 3
// per-horizon weights come from the exact value recursion, which is only
// affordable out to a bounded look-ahead; the remaining conditional mass is
// assigned the last computed weight vector (the frozen horizon is capped by
// the value table's state budget).
class PretendHedgePolicy : public HedgePolicy {
 public:
  PretendHedgePolicy(int n, double d, std::shared_ptr<HedgeValueTable> table = nullptr,
                     double tail_tol = 1e-9)
      : n_(n), prior_(d, 1), table_(std::move(table)), tail_tol_(tail_tol) {
    if (n_ < 2) throw std::invalid_argument("need N >= 2");
    if (n_ > 2 && !table_) table_ = std::make_shared<HedgeValueTable>(n_);
    if (n_ > 2) look_ahead_cap_ = budget_look_ahead(n_, 10'000'000 / 2);
  }

  ActionDistribution weights(int t, const Vec& m) const override {
    if (static_cast<int>(m.size()) != n_) throw std::invalid_argument("dimension mismatch");
    if (n_ == 2) return two_action_weights(t, m);
    return general_weights(t, m);
  }

  int actions() const override { return n_; }
  const DiscretePowerLawPrior& prior() const { return prior_; }
  int look_ahead_cap() const { return look_ahead_cap_; }

  // Marginal-equivalent two-stage sample: draw a pretend horizon T | T >= t,
  // then an action from the fixed-horizon minimax weights at T.
  int sample_action(std::mt19937_64& rng, int t, const Vec& m) const {
    std::int64_t horizon = prior_.sample(rng, t);
    ActionDistribution p;
    if (n_ == 2) {
      const std::int64_t delta = llround(m[1] - m[0]);
      const double lead = two_action_lead_weight(horizon - t, std::llabs(delta));
      p.weights = delta >= 0 ? Vec{lead, 1.0 - lead} : Vec{1.0 - lead, lead};
    } else {
      horizon = std::min<std::int64_t>(horizon, t + look_ahead_cap_);
      p = table_->minimax_weights(m, static_cast<int>(horizon - t + 1));
    }
    std::discrete_distribution<int> pick(p.weights.begin(), p.weights.end());
    return pick(rng);
  }

 private:
  static std::int64_t llround(double x) { return static_cast<std::int64_t>(std::llround(x)); }

  static int budget_look_ahead(int n, std::size_t budget) {
    // cumulative states through look-ahead s is C(s + n, n)
    int s = 1;
    while (true) {
      double states = 1.0;
      for (int i = 1; i <= n; ++i) states *= static_cast<double>(s + 1 + i) / i;
      if (states > static_cast<double>(budget)) return s;
      ++s;
    }
  }

  ActionDistribution two_action_weights(int t, const Vec& m) const {
    const double diff = m[1] - m[0];
    const std::int64_t delta = llround(diff);
    if (std::abs(diff - static_cast<double>(delta)) > 1e-9)
      throw std::invalid_argument("basis-vector play requires integer cumulative losses");
    const double lead =
        pretend_two_action_lead_weight(prior_, t, std::llabs(delta), tail_tol_);
    ActionDistribution out;
    out.weights = delta >= 0 ? Vec{lead, 1.0 - lead} : Vec{1.0 - lead, lead};
    return out;
  }

  ActionDistribution general_weights(int t, const Vec& m) const {
    ActionDistribution acc{Vec(m.size(), 0.0)};
    ActionDistribution last{Vec(m.size(), 1.0 / n_)};
    double mass_used = 0.0;
    for (int s = 0; s <= look_ahead_cap_; ++s) {
      last = table_->minimax_weights(m, s + 1);
      const double q = prior_.conditional_pmf(t + s, t);
      for (std::size_t i = 0; i < acc.weights.size(); ++i)
        acc.weights[i] += q * last.weights[i];
      mass_used += q;
      if (prior_.conditional_tail_upper_bound(static_cast<double>(t + s + 1), t) <= tail_tol_)
        break;
    }
    // Remaining conditional mass keeps the deepest look-ahead's weights.
    const double rest = std::max(0.0, 1.0 - mass_used);
    for (std::size_t i = 0; i < acc.weights.size(); ++i)
      acc.weights[i] += rest * last.weights[i];
    acc.clamp();
    return acc;
  }

  int n_;
  DiscretePowerLawPrior prior_;
  std::shared_ptr<HedgeValueTable> table_;
  double tail_tol_;
  int look_ahead_cap_ = 0;
};

// Negative-example fixture: pretend prior uniform on {lo..hi} (N = 2).
class UniformPretendHedgePolicy : public HedgePolicy {
 public:
  UniformPretendHedgePolicy(std::int64_t lo, std::int64_t hi) : lo_(lo), hi_(hi) {
    if (lo < 1 || hi < lo) throw std::invalid_argument("bad uniform support");
  }

  ActionDistribution weights(int t, const Vec& m) const override {
    if (m.size() != 2) throw std::invalid_argument("fixture supports N = 2 only");
    const std::int64_t delta = static_cast<std::int64_t>(std::llround(m[1] - m[0]));
    const double lead =
        uniform_pretend_two_action_lead_weight(lo_, hi_, t, std::llabs(delta));
    ActionDistribution out;
    out.weights = delta >= 0 ? Vec{lead, 1.0 - lead} : Vec{1.0 - lead, lead};
    return out;
  }

  int actions() const override { return 2; }
  int horizon() const override { return static_cast<int>(hi_); }

 private:
  std::int64_t lo_, hi_;
};

// ---------------------------------------------------------------------------
// Exponential weights (general loss space [0,1]^N).
// ---------------------------------------------------------------------------

inline Vec softmax_neg(const Vec& m, double eta) {
  double best = m[0];
  for (double x : m) best = std::min(best, x);  // exponent shift for stability
  Vec w(m.size());
  double total = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    w[i] = std::exp(-eta * (m[i] - best));
    total += w[i];
  }
  for (double& x : w) x /= total;
  return w;
}

// Three sharing one implementation:
//   fixed:        eta = sqrt(b ln N / T) for a known horizon T
//   time-varying: eta = sqrt(b ln N / t)
//   pretend:      E_T[ P^T | T >= t ] under the power-law pretend prior,
//                 where P^T uses eta_T.
class ExpWeightsPolicy : public HedgePolicy {
 public:
  enum class Mode { fixed, time_varying, pretend };

  static ExpWeightsPolicy fixed(int n, int t_horizon, double b = 8.0) {
    return ExpWeightsPolicy(n, Mode::fixed, b, 0.0, t_horizon);
  }
  static ExpWeightsPolicy time_varying(int n, double b = 8.0) {
    return ExpWeightsPolicy(n, Mode::time_varying, b, 0.0, -1);
  }
  static ExpWeightsPolicy pretend(int n, double d, double b) {
    return ExpWeightsPolicy(n, Mode::pretend, b, d, -1);
  }

  ActionDistribution weights(int t, const Vec& m) const override {
    if (static_cast<int>(m.size()) != n_) throw std::invalid_argument("dimension mismatch");
    switch (mode_) {
      case Mode::fixed:
        return ActionDistribution{softmax_neg(m, eta(horizon_))};
      case Mode::time_varying:
        return ActionDistribution{softmax_neg(m, eta(t))};
      case Mode::pretend:
        return pretend_weights(t, m);
    }
    throw std::logic_error("unknown mode");
  }

  int actions() const override { return n_; }
  int horizon() const override { return mode_ == Mode::fixed ? horizon_ : -1; }

 private:
  ExpWeightsPolicy(int n, Mode mode, double b, double d, int t_horizon)
      : n_(n), mode_(mode), b_(b), horizon_(t_horizon) {
    if (n_ < 2) throw std::invalid_argument("need N >= 2");
    if (!(b_ > 0.0)) throw std::invalid_argument("b must be positive");
    if (mode_ == Mode::fixed && horizon_ < 1) throw std::invalid_argument("bad horizon");
    if (mode_ == Mode::pretend) prior_ = std::make_shared<DiscretePowerLawPrior>(d, 1);
  }

  double eta(double t_or_horizon) const {
    return std::sqrt(b_ * std::log(static_cast<double>(n_)) / t_or_horizon);
  }

  // Exact conditional sum out to an adaptive cutoff K; past K every
  // per-horizon summand h_i(T) = Pr[T|T>=t] softmax_i is certified
  // decreasing (eta_K * spread <= 2d), so the remaining stride-1 sum is
  // closed by the midpoint of its integral bracket.
  ActionDistribution pretend_weights(int t, const Vec& m) const {
    const double d = prior_->exponent();
    double spread = max_entry(m) - min_entry(m);
    Vec acc(m.size(), 0.0);
    std::int64_t horizon = t;
    double mass = 0.0;
    const double tol = 1e-9;
    while (true) {
      const double q = prior_->conditional_pmf(horizon, t);
      const Vec p = softmax_neg(m, eta(static_cast<double>(horizon)));
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += q * p[i];
      mass += q;
      const bool monotone = eta(static_cast<double>(horizon)) * spread <= 2.0 * d;
      const bool small = q <= 2.0 * tol;
      if ((monotone && small) || horizon > t + 100'000'000) break;
      ++horizon;
    }
    // Tail integrals: per action, integrate q(T) softmax_i over (K, inf).
    const double scaled_tail_t = 1.0 / prior_->stop_prob(t);
    auto density = [&](double x) {
      return std::pow(x / static_cast<double>(t), -d) / scaled_tail_t;
    };
    const double a = static_cast<double>(horizon + 1);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      auto h = [&](double x) { return density(x) * softmax_neg(m, eta(x))[i]; };
      acc[i] += integrate_to_infinity(h, a, 1e-10, 1e-16) + 0.5 * h(a);
    }
    double total = 0.0;
    for (double x : acc) total += x;
    for (double& x : acc) x /= total;
    ActionDistribution out{std::move(acc)};
    out.clamp();
    return out;
  }

  int n_;
  Mode mode_;
  double b_;
  int horizon_;
  std::shared_ptr<DiscretePowerLawPrior> prior_;
};

// First-order adaptive exponential weights: pretends the final best-action
// loss m is drawn from a continuous power law conditioned on m >= m_{t-1}
// where m_t = min_i M_{t,i} + 1, and averages P^m with eta_m = sqrt(ln N / m).
// Quadrature residue off the exact simplex is renormalized away and kept as
// a diagnostic.
class FirstOrderExpWeightsPolicy : public HedgePolicy {
 public:
  FirstOrderExpWeightsPolicy(int n, double d = optimal_first_order_d())
      : n_(n), prior_(d, 1.0) {
    if (n_ < 2) throw std::invalid_argument("need N >= 2");
  }

  ActionDistribution weights(int, const Vec& m) const override {
    if (static_cast<int>(m.size()) != n_) throw std::invalid_argument("dimension mismatch");
    const double m_prev = min_entry(m) + 1.0;
    const double ln_n = std::log(static_cast<double>(n_));
    Vec acc(m.size(), 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      auto g = [&](double mm) { return softmax_neg(m, std::sqrt(ln_n / mm))[i]; };
      acc[i] = conditional_expectation(prior_, m_prev, g, GrowthEnvelope{1.0, 0.0}, 1e-8);
    }
    double total = 0.0;
    for (double x : acc) total += x;
    last_normalization_residual_ = total - 1.0;
    for (double& x : acc) x /= total;
    ActionDistribution out{std::move(acc)};
    out.clamp();
    return out;
  }

  int actions() const override { return n_; }
  double last_normalization_residual() const { return last_normalization_residual_; }

 private:
  int n_;
  ContinuousPowerLawPrior prior_;
  mutable double last_normalization_residual_ = 0.0;
};

// ---------------------------------------------------------------------------
// Ball game learners (online linear optimization in the unit l2 ball).
// ---------------------------------------------------------------------------

// Coefficient kappa(t, c) with c = 1 + |W|^2 such that the pretend-prior
// average E[x_t^T | T >= t] equals kappa * W_{t-1} under the continuous
// 1/T^2 prior. Three real-analytic branches of the same integral
// -t int_t^inf T^-2 (c + T - t)^{-1/2} dT.
inline double ball_adaptive_coefficient(double t, double c) {
  if (!(t >= 1.0) || !(c >= 1.0)) throw std::invalid_argument("need t >= 1 and c >= 1");
  const double a = c - t;
  if (std::abs(a) <= 1e-6 * t) {
    // series around c = t: kappa = -t sum_k 2(k+1)/(2k+3) a^k / c^{k+3/2}
    double sum = 0.0;
    double apow = 1.0;
    const double c32 = std::pow(c, 1.5);
    for (int k = 0; k <= 6; ++k) {
      sum += 2.0 * (k + 1) / (2.0 * k + 3.0) * apow / (c32 * std::pow(c, k));
      apow *= a;
    }
    return -t * sum;
  }
  if (c > t) {
    const double root = std::sqrt(1.0 - t / c);
    return t * std::atanh(root) / std::pow(a, 1.5) - std::sqrt(c) / a;
  }
  const double root = std::sqrt(t / c - 1.0);
  return std::sqrt(c) / (t - c) - t * std::atan(root) / std::pow(t - c, 1.5);
}

// Fixed-horizon minimax play: x_t = -W_{t-1} / sqrt(|W|^2 + (T - t + 1)).
class BallMinimaxPolicy : public BallPolicy {
 public:
  BallMinimaxPolicy(int n, int t_horizon) : n_(n), horizon_(t_horizon) {
    if (horizon_ < 1) throw std::invalid_argument("horizon must be >= 1");
  }

  Vec point(int t, const Vec& w) const override {
    const int remaining = horizon_ - t + 1;
    if (remaining < 1) throw std::logic_error("queried beyond the fixed horizon");
    const double denom = std::sqrt(dot(w, w) + remaining);
    Vec x(w);
    for (double& v : x) v = -v / denom;
    return x;
  }

  int dimension() const override { return n_; }
  int horizon() const override { return horizon_; }

 private:
  int n_;
  int horizon_;
};

// Anytime closed form of the pretend-prior average of the minimax rule.
class BallAdaptivePolicy : public BallPolicy {
 public:
  explicit BallAdaptivePolicy(int n) : n_(n) {}

  Vec point(int t, const Vec& w) const override {
    const double c = 1.0 + dot(w, w);
    const double kappa = ball_adaptive_coefficient(static_cast<double>(t), c);
    Vec x(w);
    for (double& v : x) v *= kappa;
    return x;
  }

  int dimension() const override { return n_; }

 private:
  int n_;
};

// Minimax rule with the horizon replaced by the current round.
class LastRoundBallPolicy : public BallPolicy {
 public:
  explicit LastRoundBallPolicy(int n) : n_(n) {}

  Vec point(int, const Vec& w) const override {
    const double denom = std::sqrt(dot(w, w) + 1.0);
    Vec x(w);
    for (double& v : x) v = -v / denom;
    return x;
  }

  int dimension() const override { return n_; }

 private:
  int n_;
};

// Projected online gradient descent. The step size D/(G sqrt(2t)) with
// diameter 2 and gradient bound 1 gives the classic 2 sqrt(2T) guarantee.
class OgdBallLearner : public BallLearner {
 public:
  explicit OgdBallLearner(int n) : x_(static_cast<std::size_t>(n), 0.0) {}

  Vec decide() override { return x_; }

  void observe(const Vec& w) override {
    const double eta = std::sqrt(2.0 / static_cast<double>(t_));
    for (std::size_t i = 0; i < x_.size(); ++i) x_[i] -= eta * w[i];
    const double norm = norm2(x_);
    if (norm > 1.0)
      for (double& v : x_) v /= norm;
    ++t_;
  }

  int dimension() const override { return static_cast<int>(x_.size()); }

 private:
  Vec x_;
  int t_ = 1;
};

// Doubling trick: run the base learner with guess T0, and restart with a
// doubled guess (forgetting everything) whenever the guess is exceeded.
template <typename Interface>
class DoublingLearner : public Interface {
 public:
  using Factory = std::function<std::unique_ptr<Interface>(int horizon)>;

  DoublingLearner(Factory factory, int initial_guess = 1)
      : factory_(std::move(factory)), guess_(initial_guess) {
    if (guess_ < 1) throw std::invalid_argument("initial guess must be >= 1");
    inner_ = factory_(guess_);
    remaining_ = guess_;
  }

  auto decide() -> decltype(std::declval<Interface&>().decide()) override {
    return inner_->decide();
  }

  void observe(const Vec& loss) override {
    inner_->observe(loss);
    if (--remaining_ == 0) {
      guess_ *= 2;
      inner_ = factory_(guess_);
      remaining_ = guess_;
    }
  }

  int epoch_guess() const { return guess_; }

 protected:
  Factory factory_;
  std::unique_ptr<Interface> inner_;
  int guess_;
  int remaining_;
};

class DoublingBallLearner : public DoublingLearner<BallLearner> {
 public:
  using DoublingLearner<BallLearner>::DoublingLearner;
  int dimension() const override { return inner_->dimension(); }
};

class DoublingHedgeLearner : public DoublingLearner<HedgeLearner> {
 public:
  using DoublingLearner<HedgeLearner>::DoublingLearner;
  int actions() const override { return inner_->actions(); }
};

}  // namespace horizonlab
