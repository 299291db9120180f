#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "horizonlab/common.hpp"
#include "horizonlab/fpl.hpp"
#include "horizonlab/learners.hpp"
#include "horizonlab/loss_space.hpp"

namespace horizonlab {

// ---------------------------------------------------------------------------
// Adversaries. They see the learner's current decision and the full history;
// oblivious ones simply ignore both.
// ---------------------------------------------------------------------------

struct HedgeAdversary {
  virtual ~HedgeAdversary() = default;
  virtual Vec loss(int t, const ActionDistribution& learner_decision) = 0;
  virtual int actions() const = 0;
  virtual bool oblivious() const { return true; }
};

struct BallAdversary {
  virtual ~BallAdversary() = default;
  virtual Vec point(int t, const Vec& learner_point) = 0;
  virtual int dimension() const = 0;
  virtual bool oblivious() const { return true; }
};

class ZeroHedgeAdversary : public HedgeAdversary {
 public:
  explicit ZeroHedgeAdversary(int n) : n_(n) {}
  Vec loss(int, const ActionDistribution&) override { return Vec(static_cast<std::size_t>(n_), 0.0); }
  int actions() const override { return n_; }

 private:
  int n_;
};

class RandomBasisAdversary : public HedgeAdversary {
 public:
  RandomBasisAdversary(int n, std::uint64_t seed) : n_(n), rng_(seed) {}
  Vec loss(int, const ActionDistribution&) override {
    Vec z(static_cast<std::size_t>(n_), 0.0);
    std::uniform_int_distribution<int> pick(0, n_ - 1);
    z[static_cast<std::size_t>(pick(rng_))] = 1.0;
    return z;
  }
  int actions() const override { return n_; }

 private:
  int n_;
  std::mt19937_64 rng_;
};

// e_1, e_2, e_1, e_2, ... (first coordinate on odd rounds).
class AlternatingBasisAdversary : public HedgeAdversary {
 public:
  explicit AlternatingBasisAdversary(int n) : n_(n) {}
  Vec loss(int t, const ActionDistribution&) override {
    Vec z(static_cast<std::size_t>(n_), 0.0);
    z[static_cast<std::size_t>((t + 1) % 2)] = 1.0;
    return z;
  }
  int actions() const override { return n_; }

 private:
  int n_;
};

class RandomBinaryAdversary : public HedgeAdversary {
 public:
  RandomBinaryAdversary(int n, std::uint64_t seed) : n_(n), rng_(seed) {}
  Vec loss(int, const ActionDistribution&) override {
    Vec z(static_cast<std::size_t>(n_));
    std::uniform_int_distribution<int> bit(0, 1);
    for (double& x : z) x = bit(rng_);
    return z;
  }
  int actions() const override { return n_; }

 private:
  int n_;
  std::mt19937_64 rng_;
};

class RandomUniformAdversary : public HedgeAdversary {
 public:
  RandomUniformAdversary(int n, std::uint64_t seed) : n_(n), rng_(seed) {}
  Vec loss(int, const ActionDistribution&) override {
    Vec z(static_cast<std::size_t>(n_));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (double& x : z) x = unif(rng_);
    return z;
  }
  int actions() const override { return n_; }

 private:
  int n_;
  std::mt19937_64 rng_;
};

// Keeps one action's per-round loss low so the best action's final loss is
// controlled; used to exercise first-order (m*-dependent) guarantees.
class GapHedgeAdversary : public HedgeAdversary {
 public:
  GapHedgeAdversary(int n, double low, double high, std::uint64_t seed)
      : n_(n), low_(low), high_(high), rng_(seed) {}
  Vec loss(int, const ActionDistribution&) override {
    std::uniform_real_distribution<double> jitter(0.0, 0.05);
    Vec z(static_cast<std::size_t>(n_));
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double base = (i == 0) ? low_ : high_;
      z[i] = std::min(1.0, std::max(0.0, base + jitter(rng_) - 0.025));
    }
    return z;
  }
  int actions() const override { return n_; }

 private:
  int n_;
  double low_, high_;
  std::mt19937_64 rng_;
};

class FixedSequenceHedgeAdversary : public HedgeAdversary {
 public:
  FixedSequenceHedgeAdversary(int n, std::vector<Vec> seq) : n_(n), seq_(std::move(seq)) {}
  Vec loss(int t, const ActionDistribution&) override {
    return seq_.at(static_cast<std::size_t>(t - 1));
  }
  int actions() const override { return n_; }

 private:
  int n_;
  std::vector<Vec> seq_;
};

class RandomSphereBallAdversary : public BallAdversary {
 public:
  RandomSphereBallAdversary(int n, std::uint64_t seed) : n_(n), rng_(seed) {}
  Vec point(int, const Vec&) override {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec w(static_cast<std::size_t>(n_));
    double norm = 0.0;
    do {
      for (double& x : w) x = gauss(rng_);
      norm = norm2(w);
    } while (norm < 1e-12);
    for (double& x : w) x /= norm;
    return w;
  }
  int dimension() const override { return n_; }

 private:
  int n_;
  std::mt19937_64 rng_;
};

class RandomInBallAdversary : public BallAdversary {
 public:
  RandomInBallAdversary(int n, std::uint64_t seed) : n_(n), rng_(seed) {}
  Vec point(int, const Vec&) override {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Vec w(static_cast<std::size_t>(n_));
    double norm = 0.0;
    do {
      for (double& x : w) x = gauss(rng_);
      norm = norm2(w);
    } while (norm < 1e-12);
    const double radius = std::pow(unif(rng_), 1.0 / n_);
    for (double& x : w) x = x / norm * radius;
    return w;
  }
  int dimension() const override { return n_; }

 private:
  int n_;
  std::mt19937_64 rng_;
};

// e_1, -e_1, e_1, -e_1, ... (positive sign on odd rounds).
class AlternatingSignBallAdversary : public BallAdversary {
 public:
  explicit AlternatingSignBallAdversary(int n) : n_(n) {}
  Vec point(int t, const Vec&) override {
    Vec w(static_cast<std::size_t>(n_), 0.0);
    w[0] = (t % 2 == 1) ? 1.0 : -1.0;
    return w;
  }
  int dimension() const override { return n_; }

 private:
  int n_;
};

// ---------------------------------------------------------------------------
// Traces and game loops.
// ---------------------------------------------------------------------------

struct RegretTrace {
  std::string learner_id;
  std::string adversary_id;
  std::uint64_t seed = 0;
  int trial = 0;
  Vec loss;        // per-round learner loss; index 0 is round 1
  Vec cum_loss;    // running learner loss
  Vec comparator;  // best-comparator cumulative loss at each prefix
  Vec regret;      // cum_loss - comparator

  double final_regret() const { return regret.back(); }
};

inline RegretTrace run_hedge_game(HedgeLearner& learner, HedgeAdversary& adversary, int rounds) {
  if (learner.actions() != adversary.actions())
    throw std::invalid_argument("learner/adversary setting mismatch");
  RegretTrace trace;
  Vec m(static_cast<std::size_t>(learner.actions()), 0.0);
  double cum = 0.0;
  for (int t = 1; t <= rounds; ++t) {
    ActionDistribution p = learner.decide();
    if (!p.valid()) throw std::runtime_error("learner emitted an invalid distribution");
    const Vec z = adversary.loss(t, p);
    const double ell = dot(p.weights, z);
    learner.observe(z);
    cum += ell;
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += z[i];
    trace.loss.push_back(ell);
    trace.cum_loss.push_back(cum);
    trace.comparator.push_back(min_entry(m));
    trace.regret.push_back(cum - min_entry(m));
  }
  return trace;
}

inline RegretTrace run_randomized_hedge_game(RandomizedHedgeLearner& learner,
                                             HedgeAdversary& adversary, int rounds,
                                             std::mt19937_64& rng) {
  if (learner.actions() != adversary.actions())
    throw std::invalid_argument("learner/adversary setting mismatch");
  RegretTrace trace;
  Vec m(static_cast<std::size_t>(learner.actions()), 0.0);
  double cum = 0.0;
  // randomized play pairs with oblivious adversaries: the loss may not
  // depend on the realized draw, so the adversary sees a fixed placeholder
  const ActionDistribution placeholder = uniform_distribution(learner.actions());
  for (int t = 1; t <= rounds; ++t) {
    const int action = learner.sample_action(rng);
    const Vec z = adversary.loss(t, placeholder);
    const double ell = z[static_cast<std::size_t>(action)];
    learner.observe(z);
    cum += ell;
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += z[i];
    trace.loss.push_back(ell);
    trace.cum_loss.push_back(cum);
    trace.comparator.push_back(min_entry(m));
    trace.regret.push_back(cum - min_entry(m));
  }
  return trace;
}

// Ball game: the best fixed comparator in hindsight is -W_t/|W_t|, so the
// comparator loss at each prefix is -|W_t| in closed form.
inline RegretTrace run_ball_game(BallLearner& learner, BallAdversary& adversary, int rounds) {
  if (learner.dimension() != adversary.dimension())
    throw std::invalid_argument("learner/adversary setting mismatch");
  RegretTrace trace;
  Vec w_sum(static_cast<std::size_t>(learner.dimension()), 0.0);
  double cum = 0.0;
  for (int t = 1; t <= rounds; ++t) {
    const Vec x = learner.decide();
    if (norm2(x) > 1.0 + 1e-12) throw std::runtime_error("learner left the unit ball");
    const Vec w = adversary.point(t, x);
    if (norm2(w) > 1.0 + 1e-12) throw std::runtime_error("adversary left the unit ball");
    const double ell = dot(x, w);
    learner.observe(w);
    cum += ell;
    for (std::size_t i = 0; i < w_sum.size(); ++i) w_sum[i] += w[i];
    const double comparator = -norm2(w_sum);
    trace.loss.push_back(ell);
    trace.cum_loss.push_back(cum);
    trace.comparator.push_back(comparator);
    trace.regret.push_back(cum - comparator);
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Batch protocol: per-round maximum regret over many random adversaries,
// with loss sequences shared across learners within a trial.
// ---------------------------------------------------------------------------

struct TrialBatchConfig {
  int dimension = 10;
  int rounds = 1000;
  int trials = 200;
  std::uint64_t seed = 1;
  int parallelism = 1;
  std::string adversary = "sphere";  // "sphere" or "ball"
  std::vector<std::string> learner_ids;
  std::vector<std::function<std::unique_ptr<BallLearner>()>> learner_factories;
};

struct MaxRegretTable {
  int rounds = 0;
  std::vector<std::string> learner_ids;
  std::vector<Vec> max_regret;  // [learner][round-1]
  std::string adversary;
  std::uint64_t seed = 0;
  int trials = 0;
};

inline std::vector<Vec> generate_ball_sequence(const std::string& family, int n, int rounds,
                                               std::uint64_t seed) {
  std::unique_ptr<BallAdversary> adv;
  if (family == "sphere")
    adv = std::make_unique<RandomSphereBallAdversary>(n, seed);
  else if (family == "ball")
    adv = std::make_unique<RandomInBallAdversary>(n, seed);
  else
    throw config_error("unknown ball adversary family: " + family);
  std::vector<Vec> seq;
  const Vec dummy(static_cast<std::size_t>(n), 0.0);
  seq.reserve(static_cast<std::size_t>(rounds));
  for (int t = 1; t <= rounds; ++t) seq.push_back(adv->point(t, dummy));
  return seq;
}

inline MaxRegretTable max_regret_curve(const TrialBatchConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("need at least one trial");
  if (config.learner_factories.size() != config.learner_ids.size())
    throw std::invalid_argument("learner ids/factories mismatch");
  const std::size_t num_learners = config.learner_factories.size();

  MaxRegretTable table;
  table.rounds = config.rounds;
  table.learner_ids = config.learner_ids;
  table.adversary = config.adversary;
  table.seed = config.seed;
  table.trials = config.trials;
  table.max_regret.assign(num_learners,
                          Vec(static_cast<std::size_t>(config.rounds), -1e300));

  auto run_trial = [&](int trial, std::vector<Vec>& local) {
    const std::uint64_t trial_seed = derive_seed(config.seed, static_cast<std::uint64_t>(trial));
    const std::vector<Vec> sequence =
        generate_ball_sequence(config.adversary, config.dimension, config.rounds, trial_seed);
    for (std::size_t li = 0; li < num_learners; ++li) {
      std::unique_ptr<BallLearner> learner = config.learner_factories[li]();
      Vec w_sum(static_cast<std::size_t>(config.dimension), 0.0);
      double cum = 0.0;
      for (int t = 1; t <= config.rounds; ++t) {
        const Vec x = learner->decide();
        const Vec& w = sequence[static_cast<std::size_t>(t - 1)];
        cum += dot(x, w);
        learner->observe(w);
        for (std::size_t i = 0; i < w_sum.size(); ++i) w_sum[i] += w[i];
        const double regret = cum + norm2(w_sum);
        double& cell = local[li][static_cast<std::size_t>(t - 1)];
        cell = std::max(cell, regret);
      }
    }
  };

  const int threads = std::max(1, config.parallelism);
  if (threads == 1) {
    for (int trial = 0; trial < config.trials; ++trial) run_trial(trial, table.max_regret);
  } else {
    std::vector<std::vector<Vec>> partials(
        static_cast<std::size_t>(threads),
        std::vector<Vec>(num_learners, Vec(static_cast<std::size_t>(config.rounds), -1e300)));
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w]() {
        for (int trial = w; trial < config.trials; trial += threads)
          run_trial(trial, partials[static_cast<std::size_t>(w)]);
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& part : partials)
      for (std::size_t li = 0; li < num_learners; ++li)
        for (std::size_t r = 0; r < part[li].size(); ++r)
          table.max_regret[li][r] = std::max(table.max_regret[li][r], part[li][r]);
  }
  return table;
}

// ---------------------------------------------------------------------------
// Exhaustive adversary search: exact worst case over all loss sequences from
// a finite space against a deterministic (policy-backed) learner.
// ---------------------------------------------------------------------------

struct WorstCaseResult {
  double regret = -1e300;
  std::vector<int> sequence;  // indices into the loss space
};

namespace detail {

struct StateKeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& key) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t v : key) {
      h ^= static_cast<std::size_t>(v);
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

}  // namespace detail

inline WorstCaseResult exhaustive_adversary_search(const HedgePolicy& policy,
                                                   const FiniteLossSpace& space, int rounds,
                                                   std::size_t node_budget = 4'000'000) {
  if (policy.actions() != space.actions())
    throw std::invalid_argument("policy/loss-space setting mismatch");
  double paths = 1.0;
  for (int t = 0; t < rounds; ++t) {
    paths *= static_cast<double>(space.size());
    if (paths > static_cast<double>(node_budget))
      throw budget_error("exhaustive search exceeds its node budget");
  }

  std::unordered_map<std::vector<std::uint64_t>, ActionDistribution, detail::StateKeyHash> cache;
  auto decision = [&](int t, const Vec& m) -> const ActionDistribution& {
    std::vector<std::uint64_t> key;
    key.reserve(m.size() + 1);
    key.push_back(static_cast<std::uint64_t>(t));
    for (double x : m) {
      std::uint64_t bits;
      std::memcpy(&bits, &x, sizeof(bits));
      key.push_back(bits);
    }
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, policy.weights(t, m)).first;
    return it->second;
  };

  WorstCaseResult best;
  std::vector<int> current(static_cast<std::size_t>(rounds), 0);
  Vec m(static_cast<std::size_t>(space.actions()), 0.0);

  std::function<void(int, double)> dfs = [&](int t, double cum) {
    if (t > rounds) {
      const double regret = cum - min_entry(m);
      if (regret > best.regret) {
        best.regret = regret;
        best.sequence = current;
      }
      return;
    }
    const ActionDistribution p = decision(t, m);
    for (std::size_t z = 0; z < space.size(); ++z) {
      current[static_cast<std::size_t>(t - 1)] = static_cast<int>(z);
      for (std::size_t i = 0; i < m.size(); ++i) m[i] += space[z][i];
      dfs(t + 1, cum + dot(p.weights, space[z]));
      for (std::size_t i = 0; i < m.size(); ++i) m[i] -= space[z][i];
    }
  };
  dfs(1, 0.0);
  return best;
}

}  // namespace horizonlab
