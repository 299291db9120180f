#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "horizonlab/game_solver.hpp"
#include "horizonlab/hedge_values.hpp"
#include "horizonlab/learners.hpp"
#include "horizonlab/lower_bound.hpp"

using namespace horizonlab;

TEST_CASE("stage game reproduces the three-action solved states", "[solver]") {
  const FiniteLossSpace comp = FiniteLossSpace::complemented_basis(3);
  const Vec m2{1.0, 1.0, 2.0};
  GameSolver solver(comp);

  SECTION("one round to go") {
    const StageGameSolution sol = solver.solve_state(m2, 1);
    CHECK(sol.value == Catch::Approx(-0.5).margin(1e-9));
    CHECK(sol.distribution.weights[0] == Catch::Approx(0.5).margin(1e-8));
    CHECK(sol.distribution.weights[1] == Catch::Approx(0.5).margin(1e-8));
    CHECK(sol.distribution.weights[2] == Catch::Approx(0.0).margin(1e-8));
  }

  SECTION("two rounds to go") {
    const StageGameSolution sol = solver.solve_state(m2, 2);
    CHECK(sol.value == Catch::Approx(-4.0 / 9.0).margin(1e-9));
    CHECK(sol.distribution.weights[0] == Catch::Approx(4.0 / 9.0).margin(1e-8));
    CHECK(sol.distribution.weights[1] == Catch::Approx(4.0 / 9.0).margin(1e-8));
    CHECK(sol.distribution.weights[2] == Catch::Approx(1.0 / 9.0).margin(1e-8));
  }

  SECTION("symmetric one-round basis game") {
    GameSolver basis(FiniteLossSpace::basis(2));
    const StageGameSolution sol = basis.solve_state({0.0, 0.0}, 1);
    CHECK(sol.value == Catch::Approx(0.5).margin(1e-9));
    CHECK(sol.distribution.weights[0] == Catch::Approx(0.5).margin(1e-8));
  }
}

TEST_CASE("exact recursion agrees with the basis-vector closed form", "[solver]") {
  HedgeValueTable two(2), three(3);
  GameSolver basis2(FiniteLossSpace::basis(2));
  GameSolver basis3(FiniteLossSpace::basis(3));
  for (int r = 0; r <= 5; ++r) {
    CHECK(basis2.exact_value({0.0, 0.0}, r) ==
          Catch::Approx(two.minimax_v({0.0, 0.0}, r)).margin(1e-9));
    CHECK(basis3.exact_value({1.0, 0.0, 2.0}, r) ==
          Catch::Approx(three.minimax_v({1.0, 0.0, 2.0}, r)).margin(1e-9));
  }
}

TEST_CASE("loss-space comparisons", "[solver]") {
  SECTION("N = 2: binary cube and basis values coincide") {
    GameSolver basis(FiniteLossSpace::basis(2));
    GameSolver cube(FiniteLossSpace::hypercube(2));
    for (int t = 1; t <= 6; ++t)
      CHECK(cube.exact_value({0.0, 0.0}, t) ==
            Catch::Approx(basis.exact_value({0.0, 0.0}, t)).margin(1e-9));
  }

  SECTION("N = 3: binary cube value strictly dominates") {
    GameSolver basis(FiniteLossSpace::basis(3));
    GameSolver cube(FiniteLossSpace::hypercube(3));
    const Vec zero{0.0, 0.0, 0.0};
    for (int t = 1; t <= 3; ++t)
      CHECK(cube.exact_value(zero, t) > basis.exact_value(zero, t) + 1e-6);
  }

  SECTION("one-round base case value (N-2)/(N-1)") {
    for (int n : {3, 4}) {
      GameSolver cube(FiniteLossSpace::hypercube(n));
      Vec state(static_cast<std::size_t>(n), 0.0);
      state[0] = 1.0;  // (T-1) e_1 at T = 2
      CHECK(cube.exact_value(state, 1) ==
            Catch::Approx((n - 2.0) / (n - 1.0)).margin(1e-9));
    }
  }
}

TEST_CASE("stage solutions satisfy the averaging lower bound", "[solver]") {
  const FiniteLossSpace space = FiniteLossSpace::hypercube(3);
  GameSolver solver(space);
  const Vec m{0.0, 1.0, 2.0};
  const StageGameSolution sol = solver.solve_state(m, 2);
  double avg = 0.0;
  for (std::size_t z = 0; z < space.size(); ++z) {
    Vec next(m);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] += space[z][i];
    avg += dot(sol.distribution.weights, space[z]) + solver.exact_value(next, 1);
  }
  avg /= static_cast<double>(space.size());
  CHECK(sol.value >= avg - 1e-9);
}

TEST_CASE("zero-containing spaces never favor stopping", "[solver]") {
  GameSolver cube(FiniteLossSpace::hypercube(2));
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Vec m{static_cast<double>(rng() % 4), static_cast<double>(rng() % 4)};
    const int r = 1 + static_cast<int>(rng() % 3);
    CHECK(cube.exact_value(m, r) >= cube.exact_value(m, 0) - 1e-10);
  }
}

TEST_CASE("random-horizon recursion", "[solver]") {
  SECTION("point mass degenerates to the fixed-horizon value") {
    GameSolver basis(FiniteLossSpace::basis(2));
    RandomHorizonSolver rh(FiniteLossSpace::basis(2), FiniteHorizonPrior::point_mass(4));
    CHECK(rh.value(1, {0.0, 0.0}) ==
          Catch::Approx(basis.exact_value({0.0, 0.0}, 4)).margin(1e-9));
    CHECK(rh.value(3, {1.0, 0.0}) ==
          Catch::Approx(basis.exact_value({1.0, 0.0}, 2)).margin(1e-9));
  }

  SECTION("basis space: value equals the expected fixed-horizon value") {
    HedgeValueTable two(2);
    RandomHorizonSolver rh(FiniteLossSpace::basis(2), FiniteHorizonPrior::uniform(1, 3));
    const double expect = (two.minimax_v({0.0, 0.0}, 1) + two.minimax_v({0.0, 0.0}, 2) +
                           two.minimax_v({0.0, 0.0}, 3)) /
                          3.0;
    CHECK(expect == Catch::Approx(7.0 / 12.0).margin(1e-12));
    CHECK(rh.value(1, {0.0, 0.0}) == Catch::Approx(expect).margin(1e-9));
  }

  SECTION("three-action counterexample state") {
    // conditioned at t = 3 the prior is half on T = 3, half on T = 4
    RandomHorizonSolver rh(FiniteLossSpace::complemented_basis(3),
                           FiniteHorizonPrior{{3, 4}, {0.5, 0.5}});
    const StageGameSolution sol = rh.solve_round(3, {1.0, 1.0, 2.0});
    CHECK(sol.value == Catch::Approx(-0.5).margin(1e-9));
    CHECK(sol.distribution.weights[0] == Catch::Approx(0.5).margin(1e-8));
    CHECK(sol.distribution.weights[1] == Catch::Approx(0.5).margin(1e-8));
    CHECK(sol.distribution.weights[2] == Catch::Approx(0.0).margin(1e-8));

    // the averaged fixed-horizon strategy differs from the optimum here
    GameSolver fixed(FiniteLossSpace::complemented_basis(3));
    const auto p3 = fixed.solve_state({1.0, 1.0, 2.0}, 1).distribution;
    const auto p4 = fixed.solve_state({1.0, 1.0, 2.0}, 2).distribution;
    Vec averaged(3);
    for (int i = 0; i < 3; ++i)
      averaged[static_cast<std::size_t>(i)] =
          0.5 * p3.weights[static_cast<std::size_t>(i)] +
          0.5 * p4.weights[static_cast<std::size_t>(i)];
    CHECK(averaged[0] == Catch::Approx(17.0 / 36.0).margin(1e-8));
    CHECK(averaged[1] == Catch::Approx(17.0 / 36.0).margin(1e-8));
    CHECK(averaged[2] == Catch::Approx(1.0 / 18.0).margin(1e-8));
    CHECK(std::abs(averaged[2] - sol.distribution.weights[2]) > 1e-3);
  }
}

TEST_CASE("solver budget", "[solver]") {
  GameSolver small(FiniteLossSpace::hypercube(3), 5);
  CHECK_THROWS_AS(small.exact_value({0.0, 0.0, 0.0}, 4), budget_error);
}

TEST_CASE("scaled lower bound series", "[solver]") {
  CHECK(scaled_lower_bound(4) == Catch::Approx(4.0).margin(1e-12));
  CHECK(scaled_lower_bound(60) == Catch::Approx(std::sqrt(2.0)).margin(1e-6));
  double prev = scaled_lower_bound(8);
  for (int t0 : {16, 32, 60}) {
    const double cur = scaled_lower_bound(t0);
    CHECK(cur < prev);
    prev = cur;
  }

  // recursion cross-check: G_2(1/2) under truncation T0 has the closed form
  // (2^{T0/2-1} - 1/2) / (S(T0) + 2^{T0/2-1} / partial-sum-inverse)
  for (int t0 : {4, 8, 12, 16}) {
    double partial = 0.0;
    for (int k = 1; k <= t0 / 2 - 1; ++k)
      partial += two_action_game_value(2 * k) / std::pow(2.0, k);
    const double pow_half = std::pow(2.0, t0 / 2 - 1);
    const double closed =
        (pow_half - 0.5) / (two_action_game_value(t0) + pow_half * partial);
    CHECK(scaled_lower_bound_recursive(t0) == Catch::Approx(closed).margin(1e-12));
  }
  CHECK(scaled_lower_bound_recursive(60) == Catch::Approx(std::sqrt(2.0)).margin(1e-6));
}

TEST_CASE("generating functions", "[solver]") {
  const auto at_zero = generating_function_check(0.0);
  CHECK(at_zero.g == 1.0);
  CHECK(at_zero.f == 0.0);

  const auto at_eighth = generating_function_check(0.125);
  CHECK(1.0 / at_eighth.f == Catch::Approx(std::sqrt(2.0)).margin(1e-12));

  const auto closed = generating_function_check(0.1);
  const auto sums = generating_function_partial_sums(0.1, 50);
  CHECK(closed.g == Catch::Approx(sums.g).margin(1e-9));
  CHECK(closed.f == Catch::Approx(sums.f).margin(1e-9));

  CHECK_THROWS_AS(generating_function_check(0.25), std::domain_error);
  CHECK_THROWS_AS(generating_function_check(-0.01), std::domain_error);
}

TEST_CASE("optimal play attains the random-horizon value", "[solver]") {
  // Run the averaged-weights learner against the stage-optimal adversary and
  // accumulate regret over the horizon prior: the expectation must equal
  // E[V(0,T)] exactly.
  auto table = std::make_shared<HedgeValueTable>(2);
  const FiniteHorizonPrior prior = FiniteHorizonPrior::uniform(1, 3);
  RandomHorizonSolver solver(FiniteLossSpace::basis(2), prior);
  RandomHorizonHedgePolicy learner(table, prior);

  Vec m{0.0, 0.0};
  double learner_loss = 0.0;
  double expected_regret = 0.0;
  for (int t = 1; t <= prior.max_support(); ++t) {
    const ActionDistribution p = learner.weights(t, m);
    const double q = prior.stop_prob(t);
    int best = -1;
    double best_value = -1e300;
    for (int i = 0; i < 2; ++i) {
      Vec next(m);
      next[static_cast<std::size_t>(i)] += 1.0;
      const double stopped = -min_entry(next);
      const double continued = (t < prior.max_support()) ? solver.value(t + 1, next) : 0.0;
      const double value = p.weights[static_cast<std::size_t>(i)] + q * stopped +
                           (1.0 - q) * continued;
      if (value > best_value) {
        best_value = value;
        best = i;
      }
    }
    learner_loss += p.weights[static_cast<std::size_t>(best)];
    m[static_cast<std::size_t>(best)] += 1.0;
    expected_regret += prior.tail_mass(t) * prior.stop_prob(t) * (learner_loss - min_entry(m));
  }
  CHECK(expected_regret == Catch::Approx(7.0 / 12.0).margin(1e-9));
}

TEST_CASE("finite prior stop probability degenerates at a point mass", "[solver]") {
  const FiniteHorizonPrior point = FiniteHorizonPrior::point_mass(7);
  CHECK(point.stop_prob(7) == 1.0);
  const FiniteHorizonPrior uniform = FiniteHorizonPrior::uniform(2, 4);
  CHECK(uniform.stop_prob(4) == 1.0);
  CHECK(uniform.stop_prob(2) == Catch::Approx(1.0 / 3.0).margin(1e-15));
}
