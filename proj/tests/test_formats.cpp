#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <random>
#include <string>

#include "horizonlab/config.hpp"
#include "horizonlab/csv.hpp"
#include "horizonlab/factory.hpp"
#include "horizonlab/svg.hpp"

using namespace horizonlab;

namespace {

MaxRegretTable tiny_table() {
  MaxRegretTable t;
  t.rounds = 3;
  t.learner_ids = {"a", "b"};
  t.max_regret = {{0.5, 1.0, 1.25}, {0.25, 0.875, 2.0}};
  return t;
}

}  // namespace

TEST_CASE("batch CSV round trip", "[formats]") {
  const MaxRegretTable t = tiny_table();
  const std::string csv = table_to_csv(t, "demo run");
  CHECK(csv.rfind("# meta: demo run\n", 0) == 0);
  const MaxRegretTable back = table_from_csv(csv);
  REQUIRE(back.learner_ids == t.learner_ids);
  REQUIRE(back.rounds == 3);
  for (std::size_t li = 0; li < 2; ++li)
    for (int r = 0; r < 3; ++r)
      CHECK(back.max_regret[li][static_cast<std::size_t>(r)] ==
            t.max_regret[li][static_cast<std::size_t>(r)]);
}

TEST_CASE("trace CSV schema", "[formats]") {
  RegretTrace tr;
  tr.learner_id = "fixed";
  tr.trial = 2;
  tr.loss = {0.5, 1.0};
  tr.cum_loss = {0.5, 1.5};
  tr.comparator = {0.0, 1.0};
  tr.regret = {0.5, 0.5};
  const std::string csv = trace_to_csv({tr});
  CHECK(csv.rfind("round,learner_id,trial_id,loss,cum_loss,comparator,regret\n", 0) == 0);
  CHECK(csv.find("1,fixed,2,0.5,0.5,0,0.5\n") != std::string::npos);
  CHECK(csv.find("2,fixed,2,1,1.5,1,0.5\n") != std::string::npos);
}

TEST_CASE("SVG rendering", "[formats]") {
  const std::string svg = table_to_svg(tiny_table());
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  std::size_t polylines = 0, pos = 0;
  while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
    ++polylines;
    ++pos;
  }
  CHECK(polylines == 2);  // one per learner
  CHECK(svg.find(">round</text>") != std::string::npos);
  CHECK(svg.find("max regret") != std::string::npos);
}

TEST_CASE("experiment config parsing", "[formats]") {
  const std::string good = R"({
    "schema_version": 1,
    "game": "ball",
    "dimension": 10,
    "rounds": 100,
    "trials": 5,
    "seed": 7,
    "adversary": "sphere",
    "learners": [
      {"name": "ball_adaptive"},
      {"name": "ball_minimax", "t": 100},
      {"name": "doubling_ball_minimax", "t0": 1}
    ]
  })";
  const ExperimentConfig cfg = parse_experiment_config(good);
  CHECK(cfg.dimension == 10);
  CHECK(cfg.learners.size() == 3);
  CHECK(cfg.learners[1].params.at("t") == 100.0);

  SECTION("unknown keys are rejected") {
    CHECK_THROWS_AS(parse_experiment_config(R"({"schema_version":1,"bogus":3,
      "learners":[{"name":"ogd"}]})"),
                    config_error);
  }
  SECTION("missing version is rejected") {
    CHECK_THROWS_AS(parse_experiment_config(R"({"learners":[{"name":"ogd"}]})"), config_error);
  }
  SECTION("bad adversary is rejected") {
    CHECK_THROWS_AS(parse_experiment_config(R"({"schema_version":1,"adversary":"cube",
      "learners":[{"name":"ogd"}]})"),
                    config_error);
  }
  SECTION("malformed JSON is a config error") {
    CHECK_THROWS_AS(parse_experiment_config("{nope"), config_error);
  }
}

TEST_CASE("learner factories", "[formats]") {
  LearnerSpec adaptive{"ball_adaptive", {}};
  auto factory = make_ball_learner_factory(adaptive, 5);
  auto learner = factory();
  CHECK(learner->dimension() == 5);
  CHECK(learner_display_id(adaptive) == "ball_adaptive");

  LearnerSpec minimax{"ball_minimax", {{"t", 100.0}}};
  CHECK(learner_display_id(minimax) == "ball_minimax_t100");

  LearnerSpec bogus{"nope", {}};
  CHECK_THROWS_AS(make_ball_learner_factory(bogus, 5), config_error);
  CHECK_THROWS_AS(make_hedge_policy(bogus, 2, nullptr), config_error);

  auto pretends = make_hedge_policy(LearnerSpec{"pretend_hedge", {{"d", 2.35}}}, 2, nullptr);
  CHECK(pretends->weights(1, {0.0, 0.0}).weights[0] == 0.5);

  LearnerSpec missing{"ball_minimax", {}};
  CHECK_THROWS_AS(make_ball_learner_factory(missing, 5), config_error);
}

TEST_CASE("hedge learner registry", "[formats]") {
  auto fixed = make_hedge_learner(LearnerSpec{"fixed_minimax", {{"t", 5.0}}}, 2, nullptr);
  CHECK(fixed->decide().weights[0] == Catch::Approx(0.5).margin(1e-12));

  auto doubling = make_hedge_learner(LearnerSpec{"doubling_fixed_minimax", {}}, 2, nullptr);
  for (int t = 1; t <= 10; ++t) {
    doubling->decide();
    doubling->observe({1.0, 0.0});
  }

  auto fpl = make_randomized_hedge_learner(LearnerSpec{"fpl", {}}, 3);
  std::mt19937_64 rng(4);
  const int a = fpl->sample_action(rng);
  CHECK((a >= 0 && a < 3));

  auto two_stage = make_randomized_hedge_learner(LearnerSpec{"pretend_hedge", {{"d", 2.35}}}, 2);
  CHECK(two_stage->actions() == 2);

  auto sampled = make_randomized_hedge_learner(LearnerSpec{"exp_weights_tv", {}}, 4);
  CHECK(sampled->actions() == 4);
}
