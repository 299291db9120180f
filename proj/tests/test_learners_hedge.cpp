#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <memory>
#include <random>

#include "horizonlab/learners.hpp"
#include "horizonlab/walks.hpp"

using namespace horizonlab;

namespace {

// Independent window-mass oracle: direct lgamma evaluation of each binomial
// pmf inside (-delta, delta].
double oracle_window_mass(std::int64_t s, std::int64_t delta) {
  if (s == 0) return 1.0;
  double total = 0.0;
  for (std::int64_t y = -delta + 1; y <= delta; ++y) {
    if (((s - y) & 1) != 0 || y < -s || y > s) continue;
    const double k = static_cast<double>(s + y) / 2.0;
    total += std::exp(std::lgamma(s + 1.0) - std::lgamma(k + 1.0) -
                      std::lgamma(s - k + 1.0) - s * std::log(2.0));
  }
  return total;
}

// Brute-force pretend weights: truncated conditional sum, renormalized.
double oracle_pretend_lead(double d, std::int64_t t, std::int64_t delta, std::int64_t cutoff) {
  double acc = 0.0, mass = 0.0;
  for (std::int64_t horizon = t; horizon <= cutoff; ++horizon) {
    const double q = std::pow(static_cast<double>(horizon) / t, -d);
    acc += q * (0.5 + 0.5 * oracle_window_mass(horizon - t, delta));
    mass += q;
  }
  return acc / mass;
}

}  // namespace

TEST_CASE("single-horizon lead weights match the value recursion", "[learners-hedge]") {
  auto table = std::make_shared<HedgeValueTable>(2);
  for (std::int64_t delta = 0; delta <= 5; ++delta) {
    for (std::int64_t s = 0; s <= 10; ++s) {
      const Vec m{0.0, static_cast<double>(delta)};
      const ActionDistribution p = table->minimax_weights(m, static_cast<int>(s) + 1);
      CHECK(two_action_lead_weight(s, delta) == Catch::Approx(p.weights[0]).margin(1e-10));
    }
  }
}

TEST_CASE("walk window mass agrees with direct evaluation", "[learners-hedge]") {
  for (std::int64_t delta : {1, 2, 3, 7}) {
    for (std::int64_t s : {0, 1, 2, 3, 10, 53, 200}) {
      CHECK(walk_window_mass(s, delta) ==
            Catch::Approx(oracle_window_mass(s, delta)).margin(1e-11));
    }
  }
}

TEST_CASE("pretend weights: brute-force oracle", "[learners-hedge]") {
  PretendHedgePolicy policy(2, 2.35);

  SECTION("round one is uniform") {
    const ActionDistribution p = policy.weights(1, {0.0, 0.0});
    CHECK(p.weights[0] == 0.5);
    PretendHedgePolicy three(3, 2.35);
    const ActionDistribution p3 = three.weights(1, {0.0, 0.0, 0.0});
    CHECK(p3.weights[0] == Catch::Approx(1.0 / 3).margin(1e-9));
    CHECK(p3.weights[2] == Catch::Approx(1.0 / 3).margin(1e-9));
  }

  SECTION("asymmetric states match the truncated sum") {
    struct Case {
      std::int64_t t, delta;
    };
    for (const Case c : {Case{3, 2}, Case{5, 5}, Case{10, 1}, Case{2, 7}}) {
      const double oracle = oracle_pretend_lead(2.35, c.t, c.delta, 100'000);
      const Vec m{0.0, static_cast<double>(c.delta)};
      const double got = policy.weights(static_cast<int>(c.t), m).weights[0];
      CHECK(got == Catch::Approx(oracle).margin(1e-8));
      // mirrored state swaps the weights
      const Vec mm{static_cast<double>(c.delta), 0.0};
      CHECK(policy.weights(static_cast<int>(c.t), mm).weights[1] ==
            Catch::Approx(got).margin(1e-12));
    }
  }

  SECTION("three actions: conditional average with a frozen far tail") {
    PretendHedgePolicy three(3, 2.35);
    const ActionDistribution p = three.weights(2, {1.0, 0.0, 3.0});
    CHECK(p.valid());
    CHECK(p.weights[1] > p.weights[0]);
    CHECK(p.weights[0] > p.weights[2]);
  }
}

TEST_CASE("uniform pretend prior is uninformative", "[learners-hedge]") {
  UniformPretendHedgePolicy uniform(1, 10'000);
  PretendHedgePolicy pretend(2, 2.35);
  const Vec m{0.0, 1.0};
  const ActionDistribution pu = uniform.weights(10, m);
  const ActionDistribution pp = pretend.weights(10, m);
  CHECK(std::abs(pu.weights[0] - 0.5) < 1e-2);
  CHECK(std::abs(pp.weights[0] - 0.5) > 0.05);
}

TEST_CASE("random-horizon averaging", "[learners-hedge]") {
  auto table = std::make_shared<HedgeValueTable>(2);

  SECTION("point mass reproduces fixed-horizon play") {
    RandomHorizonHedgePolicy random_h(table, FiniteHorizonPrior::point_mass(5));
    FixedMinimaxHedgePolicy fixed(table, 5);
    for (int t = 1; t <= 5; ++t) {
      const Vec m{static_cast<double>(t / 2), static_cast<double>(t - 1 - t / 2)};
      const auto a = random_h.weights(t, m), b = fixed.weights(t, m);
      CHECK(a.weights[0] == Catch::Approx(b.weights[0]).margin(1e-12));
    }
  }

  SECTION("round one under a symmetric prior is uniform") {
    RandomHorizonHedgePolicy random_h(table, FiniteHorizonPrior::uniform(1, 3));
    const auto p = random_h.weights(1, {0.0, 0.0});
    CHECK(p.weights[0] == Catch::Approx(0.5).margin(1e-12));
  }

  SECTION("stepping beyond the support fails") {
    RandomHorizonHedgePolicy random_h(table, FiniteHorizonPrior::uniform(1, 3));
    CHECK_THROWS_AS(random_h.weights(4, {1.0, 2.0}), std::logic_error);
    PolicyHedgeLearner learner(std::make_shared<FixedMinimaxHedgePolicy>(table, 2));
    learner.decide();
    learner.observe({1.0, 0.0});
    learner.decide();
    learner.observe({0.0, 1.0});
    CHECK_THROWS_AS(learner.decide(), std::logic_error);
  }
}

TEST_CASE("exponential weights modes", "[learners-hedge]") {
  SECTION("zero losses give uniform weights in every mode") {
    const Vec zero{0.0, 0.0, 0.0, 0.0};
    auto fixed = ExpWeightsPolicy::fixed(4, 100);
    auto tv = ExpWeightsPolicy::time_varying(4);
    auto pretend = ExpWeightsPolicy::pretend(4, 4.0, optimal_exp_weights_b(4.0));
    for (const HedgePolicy* p :
         {static_cast<const HedgePolicy*>(&fixed), static_cast<const HedgePolicy*>(&tv),
          static_cast<const HedgePolicy*>(&pretend)}) {
      const auto w = p->weights(7, zero);
      for (double x : w.weights) CHECK(x == Catch::Approx(0.25).margin(1e-9));
    }
  }

  SECTION("large d converges to the time-varying rule at rate ~ 1/d") {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto tv = ExpWeightsPolicy::time_varying(2, 8.0);
    std::vector<double> diffs_by_d;
    for (double d : {5.0, 10.0, 50.0, 200.0}) {
      auto pretend = ExpWeightsPolicy::pretend(2, d, 8.0);
      double worst = 0.0;
      std::mt19937_64 rng(11);
      Vec m{0.0, 0.0};
      for (int t = 1; t <= 100; ++t) {
        const auto a = pretend.weights(t, m);
        const auto b = tv.weights(t, m);
        for (std::size_t i = 0; i < 2; ++i)
          worst = std::max(worst, std::abs(a.weights[i] - b.weights[i]));
        m[0] += unif(rng);
        m[1] += unif(rng);
      }
      diffs_by_d.push_back(worst);
    }
    CHECK(diffs_by_d[0] > diffs_by_d[1]);
    CHECK(diffs_by_d[1] > diffs_by_d[2]);
    CHECK(diffs_by_d[2] > diffs_by_d[3]);
    CHECK(diffs_by_d[2] <= 2e-3);  // ~1.0e-3..1.6e-3 in practice at d = 50
    CHECK(diffs_by_d[3] <= 3e-4);
  }
}

TEST_CASE("first-order weights", "[learners-hedge]") {
  FirstOrderExpWeightsPolicy policy(2, optimal_first_order_d());

  SECTION("zero losses are uniform") {
    const auto p = policy.weights(1, {0.0, 0.0});
    CHECK(p.weights[0] == Catch::Approx(0.5).margin(1e-9));
  }

  SECTION("matches an independent high-precision quadrature") {
    const Vec m{3.0, 0.0};
    const auto p = policy.weights(4, m);
    const double d = optimal_first_order_d();
    const double m_prev = 1.0;  // min(M) + 1
    auto weight0 = [&](double mm) {
      const double eta = std::sqrt(std::log(2.0) / mm);
      const double w0 = std::exp(-eta * 3.0);
      return w0 / (w0 + 1.0);
    };
    const double lead = (d - 1.0) *
        integrate([&](double u) { return std::pow(u, d - 2.0) * weight0(m_prev / u); }, 0.0,
                  1.0, 1e-13);
    CHECK(p.weights[0] == Catch::Approx(lead).margin(1e-8));
    CHECK(std::abs(policy.last_normalization_residual()) < 1e-7);
  }
}

TEST_CASE("doubling epochs restart on schedule", "[learners-hedge]") {
  auto table = std::make_shared<HedgeValueTable>(2);
  DoublingHedgeLearner learner(
      [&](int horizon) -> std::unique_ptr<HedgeLearner> {
        return std::make_unique<PolicyHedgeLearner>(
            std::make_shared<FixedMinimaxHedgePolicy>(table, horizon));
      },
      1);
  // guesses double after rounds 1, 3, 7, 15; the wrapped fixed-horizon
  // learner throws if stepped past its guess, so survival is the contract
  std::vector<int> guesses;
  for (int t = 1; t <= 16; ++t) {
    guesses.push_back(learner.epoch_guess());
    learner.decide();
    learner.observe({1.0, 0.0});
  }
  CHECK(guesses[0] == 1);
  CHECK(guesses[1] == 2);
  CHECK(guesses[2] == 2);
  CHECK(guesses[3] == 4);
  CHECK(guesses[7] == 8);
  CHECK(guesses[15] == 16);
}

TEST_CASE("anytime learners survive long games and emit valid weights",
          "[learners-hedge]") {
  std::mt19937_64 rng(5);
  PretendHedgePolicy pretend(2, 2.35);
  auto tv = ExpWeightsPolicy::time_varying(2);
  auto pw = ExpWeightsPolicy::pretend(2, 4.0, 5.6);
  FirstOrderExpWeightsPolicy fo(2);
  Vec m{0.0, 0.0};
  for (int t = 1; t <= 300; ++t) {
    if (t % 37 == 1) {
      for (const HedgePolicy* p :
           {static_cast<const HedgePolicy*>(&pretend), static_cast<const HedgePolicy*>(&tv),
            static_cast<const HedgePolicy*>(&pw), static_cast<const HedgePolicy*>(&fo)}) {
        CHECK(p->weights(t, m).valid());
      }
    }
    m[rng() % 2] += 1.0;
  }
}
