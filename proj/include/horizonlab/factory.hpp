#pragma once

#include <functional>
#include <memory>
#include <sstream>
#include <string>

#include "horizonlab/config.hpp"
#include "horizonlab/fpl.hpp"
#include "horizonlab/learners.hpp"

namespace horizonlab {

namespace detail {

inline double param(const LearnerSpec& spec, const std::string& key, double fallback) {
  auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

inline double require_param(const LearnerSpec& spec, const std::string& key) {
  auto it = spec.params.find(key);
  if (it == spec.params.end())
    throw config_error("learner '" + spec.name + "' requires parameter '" + key + "'");
  return it->second;
}

}  // namespace detail

inline std::string learner_display_id(const LearnerSpec& spec) {
  std::ostringstream id;
  id << spec.name;
  for (const auto& [key, value] : spec.params) {
    std::ostringstream v;
    v << value;
    id << '_' << key << v.str();
  }
  return id.str();
}

inline std::function<std::unique_ptr<BallLearner>()> make_ball_learner_factory(
    const LearnerSpec& spec, int dimension) {
  const std::string& name = spec.name;
  if (name == "ball_adaptive") {
    return [dimension]() -> std::unique_ptr<BallLearner> {
      return std::make_unique<PolicyBallLearner>(std::make_shared<BallAdaptivePolicy>(dimension));
    };
  }
  if (name == "ball_minimax") {
    const int horizon = static_cast<int>(detail::require_param(spec, "t"));
    return [dimension, horizon]() -> std::unique_ptr<BallLearner> {
      return std::make_unique<PolicyBallLearner>(
          std::make_shared<BallMinimaxPolicy>(dimension, horizon));
    };
  }
  if (name == "ogd") {
    return [dimension]() -> std::unique_ptr<BallLearner> {
      return std::make_unique<OgdBallLearner>(dimension);
    };
  }
  if (name == "last_round_ball") {
    return [dimension]() -> std::unique_ptr<BallLearner> {
      return std::make_unique<PolicyBallLearner>(std::make_shared<LastRoundBallPolicy>(dimension));
    };
  }
  if (name == "doubling_ball_minimax") {
    const int t0 = static_cast<int>(detail::param(spec, "t0", 1.0));
    return [dimension, t0]() -> std::unique_ptr<BallLearner> {
      return std::make_unique<DoublingBallLearner>(
          [dimension](int horizon) -> std::unique_ptr<BallLearner> {
            return std::make_unique<PolicyBallLearner>(
                std::make_shared<BallMinimaxPolicy>(dimension, horizon));
          },
          t0);
    };
  }
  throw config_error("unknown ball learner: " + name);
}

inline std::shared_ptr<const HedgePolicy> make_hedge_policy(
    const LearnerSpec& spec, int n, std::shared_ptr<HedgeValueTable> table) {
  const std::string& name = spec.name;
  if (!table) table = std::make_shared<HedgeValueTable>(n);
  if (name == "fixed_minimax")
    return std::make_shared<FixedMinimaxHedgePolicy>(
        table, static_cast<int>(detail::require_param(spec, "t")));
  if (name == "last_round_hedge") return std::make_shared<LastRoundHedgePolicy>(table);
  if (name == "random_horizon_uniform")
    return std::make_shared<RandomHorizonHedgePolicy>(
        table, FiniteHorizonPrior::uniform(
                   static_cast<int>(detail::param(spec, "lo", 1.0)),
                   static_cast<int>(detail::require_param(spec, "hi"))));
  if (name == "pretend_hedge")
    return std::make_shared<PretendHedgePolicy>(n, detail::param(spec, "d", 2.35), table);
  if (name == "uniform_pretend")
    return std::make_shared<UniformPretendHedgePolicy>(
        static_cast<std::int64_t>(detail::param(spec, "lo", 1.0)),
        static_cast<std::int64_t>(detail::require_param(spec, "hi")));
  if (name == "exp_weights_fixed")
    return std::make_shared<ExpWeightsPolicy>(ExpWeightsPolicy::fixed(
        n, static_cast<int>(detail::require_param(spec, "t")), detail::param(spec, "b", 8.0)));
  if (name == "exp_weights_tv")
    return std::make_shared<ExpWeightsPolicy>(
        ExpWeightsPolicy::time_varying(n, detail::param(spec, "b", 8.0)));
  if (name == "exp_weights_pretend") {
    const double d = detail::param(spec, "d", 4.0);
    return std::make_shared<ExpWeightsPolicy>(ExpWeightsPolicy::pretend(
        n, d, detail::param(spec, "b", optimal_exp_weights_b(d))));
  }
  if (name == "first_order")
    return std::make_shared<FirstOrderExpWeightsPolicy>(
        n, detail::param(spec, "d", optimal_first_order_d()));
  throw config_error("unknown hedge learner: " + name);
}

inline std::unique_ptr<HedgeLearner> make_hedge_learner(const LearnerSpec& spec, int n,
                                                        std::shared_ptr<HedgeValueTable> table) {
  if (spec.name == "doubling_fixed_minimax") {
    if (!table) table = std::make_shared<HedgeValueTable>(n);
    const int t0 = static_cast<int>(detail::param(spec, "t0", 1.0));
    return std::make_unique<DoublingHedgeLearner>(
        [table](int horizon) -> std::unique_ptr<HedgeLearner> {
          return std::make_unique<PolicyHedgeLearner>(
              std::make_shared<FixedMinimaxHedgePolicy>(table, horizon));
        },
        t0);
  }
  return std::make_unique<PolicyHedgeLearner>(make_hedge_policy(spec, n, std::move(table)));
}

// Learners for the bet-on-one-action setting; anything deterministic is
// wrapped so its sampled actions follow the emitted distribution.
inline std::unique_ptr<RandomizedHedgeLearner> make_randomized_hedge_learner(
    const LearnerSpec& spec, int n, std::shared_ptr<HedgeValueTable> table = nullptr) {
  if (spec.name == "fpl") {
    const double d = detail::param(spec, "d", optimal_fpl_d());
    return std::make_unique<FplLearner>(n, d, detail::param(spec, "b", optimal_fpl_b(d)));
  }
  if (spec.name == "pretend_hedge")
    return std::make_unique<TwoStagePretendHedge>(std::make_shared<PretendHedgePolicy>(
        n, detail::param(spec, "d", 2.35), std::move(table)));
  return std::make_unique<DistributionSampler>(make_hedge_learner(spec, n, std::move(table)));
}

}  // namespace horizonlab
