#pragma once

#include <cmath>
#include <memory>
#include <random>

#include "horizonlab/common.hpp"
#include "horizonlab/learners.hpp"
#include "horizonlab/priors.hpp"

namespace horizonlab {

// Learners for the randomized Hedge setting: bet on one action per round.
struct RandomizedHedgeLearner {
  virtual ~RandomizedHedgeLearner() = default;
  virtual int sample_action(std::mt19937_64& rng) = 0;
  virtual void observe(const Vec& loss) = 0;
  virtual int actions() const = 0;
};

// Samples from the decision distribution of any deterministic Hedge learner;
// the marginal action law is exactly the emitted distribution.
class DistributionSampler : public RandomizedHedgeLearner {
 public:
  explicit DistributionSampler(std::unique_ptr<HedgeLearner> inner) : inner_(std::move(inner)) {}

  int sample_action(std::mt19937_64& rng) override {
    const ActionDistribution p = inner_->decide();
    std::discrete_distribution<int> pick(p.weights.begin(), p.weights.end());
    return pick(rng);
  }

  void observe(const Vec& loss) override { inner_->observe(loss); }
  int actions() const override { return inner_->actions(); }

 private:
  std::unique_ptr<HedgeLearner> inner_;
};

// Two-stage implementation of the pretend-prior Hedge learner: draw a
// pretend horizon T | T >= t, then an action from the fixed-horizon minimax
// weights. The action's marginal law equals the averaged weights.
class TwoStagePretendHedge : public RandomizedHedgeLearner {
 public:
  explicit TwoStagePretendHedge(std::shared_ptr<const PretendHedgePolicy> policy)
      : policy_(std::move(policy)), m_(static_cast<std::size_t>(policy_->actions()), 0.0) {}

  int sample_action(std::mt19937_64& rng) override {
    return policy_->sample_action(rng, t_, m_);
  }

  void observe(const Vec& loss) override {
    for (std::size_t i = 0; i < m_.size(); ++i) m_[i] += loss[i];
    ++t_;
  }

  int actions() const override { return policy_->actions(); }

 private:
  std::shared_ptr<const PretendHedgePolicy> policy_;
  Vec m_;
  int t_ = 1;
};

// Follow the perturbed leader with a pretend-prior perturbation: the round-t
// noise is drawn by first sampling a continuous pretend horizon T | T >= t
// with density ~ 1/T^d, then a point uniform in [0, Delta_T]^N with
// Delta_T = sqrt(b T N). Its marginal density has the closed form below.
class FplLearner : public RandomizedHedgeLearner {
 public:
  FplLearner(int n, double d = optimal_fpl_d(), double b_opt = -1.0)
      : n_(n), d_(d), b_(b_opt > 0.0 ? b_opt : optimal_fpl_b(d)), prior_(d, 1.0),
        m_(static_cast<std::size_t>(n), 0.0) {
    if (n_ < 2) throw std::invalid_argument("need N >= 2");
  }

  int sample_action(std::mt19937_64& rng) override {
    const Vec xi = sample_perturbation(rng);
    Vec perturbed(m_);
    for (std::size_t i = 0; i < perturbed.size(); ++i) perturbed[i] += xi[i];
    return static_cast<int>(argmin_index(perturbed));
  }

  Vec sample_perturbation(std::mt19937_64& rng) {
    const double horizon = prior_.sample(rng, static_cast<double>(t_));
    const double delta_t = std::sqrt(b_ * horizon * n_);
    std::uniform_real_distribution<double> unif(0.0, delta_t);
    Vec xi(static_cast<std::size_t>(n_));
    for (double& x : xi) x = unif(rng);
    return xi;
  }

  // Marginal density of the round-t perturbation, exactly normalized:
  //   f_t(xi) = (d-1)/((d-1+N/2) Delta_t^N) min{1, (Delta_t/|xi|_inf)^(2d-2+N)}
  // on the nonnegative orthant, 0 elsewhere.
  double density(const Vec& xi, int t) const {
    if (static_cast<int>(xi.size()) != n_) throw std::invalid_argument("dimension mismatch");
    for (double x : xi)
      if (x < 0.0) return 0.0;
    const double delta_t = delta_at(t);
    double sup = 0.0;
    for (double x : xi) sup = std::max(sup, x);
    const double norm_factor =
        (d_ - 1.0) / ((d_ - 1.0 + n_ / 2.0) * std::pow(delta_t, static_cast<double>(n_)));
    if (sup <= delta_t) return norm_factor;
    return norm_factor * std::pow(delta_t / sup, 2.0 * d_ - 2.0 + n_);
  }

  double delta_at(int t) const { return std::sqrt(b_ * t * n_); }

  void observe(const Vec& loss) override {
    for (std::size_t i = 0; i < m_.size(); ++i) m_[i] += loss[i];
    ++t_;
  }

  int actions() const override { return n_; }
  int round() const { return t_; }
  double d() const { return d_; }
  double b() const { return b_; }

 private:
  int n_;
  double d_;
  double b_;
  ContinuousPowerLawPrior prior_;
  Vec m_;
  int t_ = 1;
};

}  // namespace horizonlab
