#pragma once

#include <string>

#include "horizonlab/arena.hpp"
#include "horizonlab/config.hpp"
#include "horizonlab/csv.hpp"
#include "horizonlab/factory.hpp"

namespace horizonlab {

inline TrialBatchConfig to_trial_batch(const ExperimentConfig& cfg) {
  TrialBatchConfig batch;
  batch.dimension = cfg.dimension;
  batch.rounds = cfg.rounds;
  batch.trials = cfg.trials;
  batch.seed = cfg.seed;
  batch.parallelism = cfg.parallelism;
  batch.adversary = cfg.adversary;
  for (const LearnerSpec& spec : cfg.learners) {
    batch.learner_ids.push_back(learner_display_id(spec));
    batch.learner_factories.push_back(make_ball_learner_factory(spec, cfg.dimension));
  }
  return batch;
}

inline MaxRegretTable run_benchmark(const ExperimentConfig& cfg) {
  return max_regret_curve(to_trial_batch(cfg));
}

// The Figure-style four-learner comparison: anytime closed form vs the
// horizon-informed minimax rule vs gradient descent vs the doubling trick.
inline ExperimentConfig default_ball_benchmark(int dimension, int rounds, int trials,
                                               std::uint64_t seed, int parallelism,
                                               const std::string& adversary = "sphere") {
  ExperimentConfig cfg;
  cfg.dimension = dimension;
  cfg.rounds = rounds;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.parallelism = parallelism;
  cfg.adversary = adversary;
  cfg.learners = {
      LearnerSpec{"ball_adaptive", {}},
      LearnerSpec{"ball_minimax", {{"t", static_cast<double>(rounds)}}},
      LearnerSpec{"ogd", {}},
      LearnerSpec{"doubling_ball_minimax", {{"t0", 1.0}}},
  };
  return cfg;
}

}  // namespace horizonlab
