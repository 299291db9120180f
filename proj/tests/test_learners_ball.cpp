#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <memory>
#include <random>

#include "horizonlab/arena.hpp"
#include "horizonlab/learners.hpp"
#include "horizonlab/quadrature.hpp"

using namespace horizonlab;

namespace {

// Quadrature oracle for the adaptive ball coefficient:
//   kappa(t, c) = -t int_t^inf T^-2 (c + T - t)^{-1/2} dT.
double oracle_coefficient(double t, double c) {
  return -t * integrate_to_infinity(
                  [&](double big_t) {
                    return std::pow(big_t, -2.0) / std::sqrt(c + big_t - t);
                  },
                  t, 1e-12);
}

}  // namespace

TEST_CASE("fixed-horizon ball minimax", "[learners-ball]") {
  BallMinimaxPolicy policy(3, 5);
  SECTION("starts at the origin") {
    const Vec x = policy.point(1, {0.0, 0.0, 0.0});
    CHECK(norm2(x) == 0.0);
  }
  SECTION("known shape") {
    const Vec x = policy.point(5, {1.0, 0.0, 0.0});  // one round left
    CHECK(x[0] == Catch::Approx(-1.0 / std::sqrt(2.0)).margin(1e-12));
  }
  SECTION("horizon is enforced") {
    PolicyBallLearner learner(std::make_shared<BallMinimaxPolicy>(3, 1));
    learner.decide();
    learner.observe({1.0, 0.0, 0.0});
    CHECK_THROWS_AS(learner.decide(), std::logic_error);
  }
}

TEST_CASE("adaptive ball coefficient matches its defining integral", "[learners-ball]") {
  SECTION("branch agreement on a (t, |W|) grid") {
    for (int t : {1, 2, 5, 17, 50}) {
      for (double w : {0.0, 0.5, 1.0, 3.0, 7.0}) {
        const double c = 1.0 + w * w;
        const double kappa = ball_adaptive_coefficient(static_cast<double>(t), c);
        CHECK(kappa == Catch::Approx(oracle_coefficient(static_cast<double>(t), c))
                           .margin(1e-6));
      }
    }
  }

  SECTION("series branch continuity across c = t") {
    for (double t : {2.0, 9.0, 33.0}) {
      const double at = ball_adaptive_coefficient(t, t);
      CHECK(ball_adaptive_coefficient(t, t * (1.0 + 1e-6)) == Catch::Approx(at).margin(1e-5));
      CHECK(ball_adaptive_coefficient(t, t * (1.0 - 1e-6)) == Catch::Approx(at).margin(1e-5));
      CHECK(at == Catch::Approx(-2.0 * t / (3.0 * std::pow(t, 1.5))).margin(1e-12));
    }
  }

  SECTION("decisions stay inside the unit ball") {
    BallAdaptivePolicy policy(4);
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vec w_sum(4, 0.0);
    for (int t = 1; t <= 500; ++t) {
      const Vec x = policy.point(t, w_sum);
      CHECK(norm2(x) <= 1.0 + 1e-12);
      Vec w(4);
      for (double& v : w) v = gauss(rng);
      const double n = norm2(w);
      for (std::size_t i = 0; i < 4; ++i) w_sum[i] += w[i] / n;
    }
  }

  SECTION("first round from the origin") {
    BallAdaptivePolicy policy(3);
    CHECK(norm2(policy.point(1, {0.0, 0.0, 0.0})) == 0.0);
  }
}

TEST_CASE("projected gradient descent", "[learners-ball]") {
  OgdBallLearner learner(3);
  SECTION("starts at the origin and projects back into the ball") {
    CHECK(norm2(learner.decide()) == 0.0);
    learner.observe({1.0, 0.0, 0.0});  // eta_1 = 2, step lands at norm 2
    const Vec x = learner.decide();
    CHECK(norm2(x) == Catch::Approx(1.0).margin(1e-12));
    CHECK(x[0] == Catch::Approx(-1.0).margin(1e-12));
  }
}

TEST_CASE("doubling never oversteps its inner guess", "[learners-ball]") {
  DoublingBallLearner learner(
      [](int horizon) -> std::unique_ptr<BallLearner> {
        return std::make_unique<PolicyBallLearner>(
            std::make_shared<BallMinimaxPolicy>(2, horizon));
      },
      1);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  for (int t = 1; t <= 200; ++t) {  // BallMinimaxPolicy throws if overstepped
    learner.decide();
    learner.observe({unif(rng), unif(rng)});
  }
  // guesses 1+2+...+64 = 127 rounds are spent; round 200 sits in the 128 epoch
  CHECK(learner.epoch_guess() == 128);
}

TEST_CASE("last-round ball heuristic shape", "[learners-ball]") {
  LastRoundBallPolicy policy(2);
  const Vec x = policy.point(4, {1.0, 0.0});
  CHECK(x[0] == Catch::Approx(-1.0 / std::sqrt(2.0)).margin(1e-12));
}

TEST_CASE("regret guarantees at play scale", "[learners-ball]") {
  SECTION("informed minimax stays below sqrt(T)") {
    const int rounds = 100;
    double worst = -1e300;
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
      PolicyBallLearner learner(std::make_shared<BallMinimaxPolicy>(10, rounds));
      RandomSphereBallAdversary adversary(10, derive_seed(808, trial));
      worst = std::max(worst, run_ball_game(learner, adversary, rounds).final_regret());
    }
    CHECK(worst <= std::sqrt(static_cast<double>(rounds)) + 1e-9);
  }

  SECTION("gradient descent stays below its 2 sqrt(2T) guarantee") {
    const int rounds = 1000;
    double worst = -1e300;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
      OgdBallLearner learner(10);
      RandomSphereBallAdversary adversary(10, derive_seed(909, trial));
      worst = std::max(worst, run_ball_game(learner, adversary, rounds).final_regret());
    }
    CHECK(worst <= 2.0 * std::sqrt(2.0 * rounds) + 5.0);
  }
}
