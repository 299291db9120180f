#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "horizonlab/bounds.hpp"
#include "horizonlab/priors.hpp"
#include "horizonlab/quadrature.hpp"

using namespace horizonlab;

TEST_CASE("tail masses", "[priors]") {
  SECTION("continuous closed form") {
    ContinuousPowerLawPrior p2(2.0);
    CHECK(p2.tail_mass(1.0) == Catch::Approx(1.0).margin(1e-15));
    ContinuousPowerLawPrior p235(2.35);
    // closed form vs direct quadrature
    const double direct =
        integrate_to_infinity([](double x) { return std::pow(x, -2.35); }, 10.0, 1e-12);
    CHECK(p235.tail_mass(10.0) == Catch::Approx(0.033087673492663935).margin(1e-12));
    CHECK(p235.tail_mass(10.0) == Catch::Approx(direct).margin(1e-10));
  }

  SECTION("discrete zeta value") {
    DiscretePowerLawPrior p2(2.0);
    CHECK(p2.tail_mass(1) == Catch::Approx(1.6449340668482264).margin(1e-11));
    DiscretePowerLawPrior p235(2.35);
    // brute-force summation oracle with integral remainder
    double brute = 0.0;
    for (int n = 3; n < 2'000'000; ++n) brute += std::pow(n, -2.35);
    brute += std::pow(2'000'000.0, -1.35) / 1.35;
    CHECK(p235.tail_mass(3) == Catch::Approx(brute).margin(1e-9));
  }
}

TEST_CASE("stop probabilities", "[priors]") {
  DiscretePowerLawPrior p2(2.0);
  CHECK(p2.stop_prob(1) == Catch::Approx(0.6079271018540267).margin(1e-11));

  for (double d : {1.6, 2.0, 2.35, 3.0}) {
    DiscretePowerLawPrior p(d);
    for (std::int64_t t : {1, 2, 5, 17, 100}) {
      CHECK(p.stop_prob(t) <= (d - 1.0) / static_cast<double>(t) + 1e-12);
    }
    CHECK(p.stop_prob(100'000) * 100'000.0 == Catch::Approx(d - 1.0).margin(1e-3));
  }
}

TEST_CASE("conditional chain consistency", "[priors]") {
  DiscretePowerLawPrior p(2.35);
  for (std::int64_t t : {1, 4, 9}) {
    const double q = p.stop_prob(t);
    for (std::int64_t x = t + 1; x < t + 6; ++x)
      CHECK(p.conditional_pmf(x, t) ==
            Catch::Approx((1.0 - q) * p.conditional_pmf(x, t + 1)).margin(1e-12));
    // normalization of the conditional pmf
    double mass = 0.0;
    std::int64_t x = t;
    while (mass < 1.0 - 1e-10 && x < t + 50'000'000) {
      mass += p.conditional_pmf(x, t);
      if (p.conditional_tail_upper_bound(static_cast<double>(x + 1), t) < 1e-10) break;
      ++x;
    }
    mass += p.conditional_tail(x + 1, t);
    CHECK(mass == Catch::Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("conditional expectations", "[priors]") {
  SECTION("normalization") {
    DiscretePowerLawPrior pd(2.35);
    ContinuousPowerLawPrior pc(2.35);
    auto one = [](double) { return 1.0; };
    CHECK(conditional_expectation(pd, 4, one, GrowthEnvelope{1.0, 0.0}) ==
          Catch::Approx(1.0).margin(1e-8));
    CHECK(conditional_expectation(pc, 4.0, one, GrowthEnvelope{1.0, 0.0}) ==
          Catch::Approx(1.0).margin(1e-8));
  }

  SECTION("continuous closed form: E[1/sqrt(T)] at d = 2, t = 1 is 2/3") {
    ContinuousPowerLawPrior pc(2.0);
    auto g = [](double x) { return 1.0 / std::sqrt(x); };
    CHECK(conditional_expectation(pc, 1.0, g, GrowthEnvelope{1.0, 0.0}) ==
          Catch::Approx(2.0 / 3.0).margin(1e-8));
  }

  SECTION("discrete vs brute force") {
    DiscretePowerLawPrior pd(2.35);
    auto g = [](double x) { return std::sqrt(x - 3.0); };
    double brute = 0.0, norm = 0.0;
    for (int n = 3; n < 1'000'000; ++n) {
      brute += std::sqrt(n - 3.0) * std::pow(n, -2.35);
      norm += std::pow(n, -2.35);
    }
    // integral remainders for both series
    brute += integrate_to_infinity(
        [](double x) { return std::sqrt(x - 3.0) * std::pow(x, -2.35); }, 1'000'000.0, 1e-10);
    norm += std::pow(1'000'000.0, -1.35) / 1.35;
    CHECK(conditional_expectation(pd, 3, g, GrowthEnvelope{1.0, 0.5}) ==
          Catch::Approx(brute / norm).margin(1e-6));
  }

  SECTION("divergence is reported") {
    DiscretePowerLawPrior pd(2.0);
    auto g = [](double x) { return x * x; };
    CHECK_THROWS_AS(conditional_expectation(pd, 1, g, GrowthEnvelope{1.0, 2.0}),
                    divergence_error);
  }
}

TEST_CASE("horizon sampling", "[priors]") {
  SECTION("continuous inverse CDF") {
    ContinuousPowerLawPrior pc(2.0);
    CHECK(pc.inverse_conditional_cdf(0.0, 1.0) == Catch::Approx(1.0));
    CHECK(pc.inverse_conditional_cdf(0.75, 1.0) == Catch::Approx(4.0).margin(1e-12));
  }

  SECTION("discrete empirical mass at the first point") {
    DiscretePowerLawPrior pd(2.0);
    std::mt19937_64 rng(2024);
    const int samples = 1'000'000;
    int at_one = 0;
    for (int i = 0; i < samples; ++i)
      if (pd.sample(rng, 1) == 1) ++at_one;
    const double p1 = pd.stop_prob(1);
    const double sigma = std::sqrt(p1 * (1.0 - p1) / samples);
    CHECK(std::abs(at_one / static_cast<double>(samples) - p1) <= 3.0 * sigma);
  }

  SECTION("empirical CDF matches the analytic CDF (KS)") {
    DiscretePowerLawPrior pd(2.35);
    std::mt19937_64 rng(7);
    const int samples = 100'000;
    std::vector<std::int64_t> draws(samples);
    for (auto& x : draws) x = pd.sample(rng, 2);
    std::sort(draws.begin(), draws.end());
    double ks = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double analytic = 1.0 - pd.conditional_tail(draws[i] + 1, 2);
      const double hi = static_cast<double>(i + 1) / samples;
      // step CDF: compare at the right edge of each run of equal values
      if (i + 1 < samples && draws[i + 1] == draws[i]) continue;
      ks = std::max(ks, std::abs(hi - analytic));
    }
    // 1% critical value of the one-sample KS statistic
    CHECK(ks < 1.6276 / std::sqrt(static_cast<double>(samples)));
  }
}

TEST_CASE("bound evaluators", "[priors]") {
  SECTION("gamma ratio against high-precision references") {
    CHECK(gamma_ratio(2.0) == Catch::Approx(1.7724538509055160).margin(1e-10));
    CHECK(gamma_ratio(2.35) == Catch::Approx(0.9247160342324421).margin(1e-10));
    CHECK(gamma_ratio(3.0) == Catch::Approx(0.4431134627263790).margin(1e-10));
  }

  SECTION("stated leading terms") {
    // pretend Hedge at d = 2.35 is about 3 c_N sqrt(T)
    const double b5 = eval_bound({BoundKind::pretend_hedge, 2.35, 1.0, 2}, 400.0);
    CHECK(b5 == Catch::Approx(2.9871075637219251 * c_n(2) * 20.0).margin(1e-9));
    CHECK(b5 / (c_n(2) * 20.0) == Catch::Approx(3.0).margin(0.02));

    // ball game at d = 2: pi sqrt(T)
    CHECK(eval_bound({BoundKind::ball_adaptive, 2.0, 1.0, 10}, 400.0) ==
          Catch::Approx(20.0 * M_PI).margin(1e-9));

    // FPL at the optimal parameters: about 4.6 sqrt(T N)
    const double d_fpl = optimal_fpl_d();
    const double b_fpl = optimal_fpl_b(d_fpl);
    CHECK(eval_bound({BoundKind::fpl, d_fpl, b_fpl, 4}, 100.0) ==
          Catch::Approx(4.5590141139095553 * 20.0).margin(1e-9));

    // exponential weights: optimal b at d = 4 gives coefficient ~ 1.0142
    CHECK(optimal_exp_weights_b(4.0) == Catch::Approx(5.6).margin(1e-12));
    CHECK(eval_bound({BoundKind::exp_weights, 4.0, 5.6, 4}, 400.0) ==
          Catch::Approx(1.0141851056742199 * std::sqrt(400.0 * std::log(4.0))).margin(1e-9));

    // first order at the optimal d: leading coefficient is 3/2 + sqrt(2)
    const double d_fo = optimal_first_order_d();
    const double lead = 3.0 * (d_fo - 7.0 / 6.0) * (d_fo - 1.0) /
                        ((d_fo - 1.5) * (d_fo - 0.5));
    CHECK(lead == Catch::Approx(1.5 + std::sqrt(2.0)).margin(1e-12));
  }

  SECTION("domain errors") {
    CHECK_THROWS_AS(eval_bound({BoundKind::pretend_hedge, 1.2, 1.0, 2}, 100.0),
                    std::domain_error);
    CHECK_THROWS_AS(eval_bound({BoundKind::fpl, 2.0, -1.0, 2}, 100.0), std::domain_error);
  }
}

TEST_CASE("prior parameter domain", "[priors]") {
  CHECK_THROWS_AS(DiscretePowerLawPrior(1.5), std::domain_error);
  CHECK_THROWS_AS(ContinuousPowerLawPrior(1.4), std::domain_error);
}
