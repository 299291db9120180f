// Command-line front end: exact game values, small-game solving, benchmark
// runs with CSV/SVG output, and the verification suite.

#include <chrono>
#include <cmath>
#include <ctime>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "horizonlab/acceptance.hpp"
#include "horizonlab/bench.hpp"
#include "horizonlab/csv.hpp"
#include "horizonlab/game_solver.hpp"
#include "horizonlab/hedge_values.hpp"
#include "horizonlab/lower_bound.hpp"
#include "horizonlab/svg.hpp"

namespace {

using namespace horizonlab;

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[64];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
  return buf;
}

int cmd_value(int n, int t_max, const std::string& out_path) {
  if (n < 2) throw config_error("--n must be >= 2");
  if (t_max < 0) throw config_error("--t must be >= 0");
  HedgeValueTable table(n);
  const Vec zero(static_cast<std::size_t>(n), 0.0);
  std::ostringstream csv;
  csv << "t,value,random_walk,c_n_sqrt_t,two_action_closed_form,upper_bound_ok\n";
  for (int t = 0; t <= t_max; ++t) {
    const double v = table.minimax_v(zero, t);
    const double r = table.random_walk_r(zero, t);
    const double cap = c_n(n) * std::sqrt(static_cast<double>(t));
    csv << t << ',' << format_double(v) << ',' << format_double(r) << ','
        << format_double(cap) << ','
        << (n == 2 && t >= 1 ? format_double(two_action_game_value(t)) : std::string("-"))
        << ',' << (v <= cap + 1e-12 ? "true" : "false") << '\n';
  }
  std::cout << csv.str();
  if (!out_path.empty()) write_file(out_path, csv_meta_line("generated " + timestamp()) + csv.str());
  return 0;
}

int cmd_solve_lower_bound(int t0, bool recursive) {
  const double partial = scaled_lower_bound(t0);
  std::cout << "scaled lower bound, partial-sum form, T0=" << t0 << ": "
            << format_double(partial) << "\n";
  std::cout << "limit: sqrt(2) = " << format_double(std::sqrt(2.0)) << "\n";
  if (recursive) {
    const double rec = scaled_lower_bound_recursive(t0);
    std::cout << "truncated-recursion cross-check value: " << format_double(rec) << "\n";
  }
  return 0;
}

int cmd_solve_example(const std::string& name) {
  if (name != "appendix-g-1") throw config_error("unknown example: " + name);
  GameSolver solver(FiniteLossSpace::complemented_basis(3));
  const Vec m2{1.0, 1.0, 2.0};
  const auto one = solver.solve_state(m2, 1);
  const auto two = solver.solve_state(m2, 2);
  RandomHorizonSolver rh(FiniteLossSpace::complemented_basis(3),
                         FiniteHorizonPrior{{3, 4}, {0.5, 0.5}});
  const auto stage = rh.solve_round(3, m2);
  Vec averaged(3, 0.0);
  for (std::size_t i = 0; i < 3; ++i)
    averaged[i] = 0.5 * one.distribution.weights[i] + 0.5 * two.distribution.weights[i];

  auto show = [](const char* label, const Vec& v) {
    std::cout << label << " = (" << format_double(v[0]) << ", " << format_double(v[1])
              << ", " << format_double(v[2]) << ")\n";
  };
  std::cout << "V(M2,1) = " << format_double(one.value) << "\n";
  show("P3", one.distribution.weights);
  std::cout << "V(M2,2) = " << format_double(two.value) << "\n";
  show("P4", two.distribution.weights);
  std::cout << "stage value V' = " << format_double(stage.value) << "\n";
  show("P*", stage.distribution.weights);
  show("E[P^T|T>=3]", averaged);
  const auto result = acceptance::criterion_appendix_g_examples();
  std::cout << (result.pass ? "PASS" : "FAIL") << ": " << result.details << "\n";
  return result.pass ? 0 : 1;
}

int cmd_solve_compare(int n, int t_max, std::size_t budget) {
  GameSolver basis(FiniteLossSpace::basis(n), budget);
  GameSolver cube(FiniteLossSpace::hypercube(n), budget);
  const Vec zero(static_cast<std::size_t>(n), 0.0);
  bool all_pass = true;
  std::cout << "t,basis_value,cube_value,relation,ok\n";
  for (int t = 1; t <= t_max; ++t) {
    const double v1 = basis.exact_value(zero, t);
    const double v2 = cube.exact_value(zero, t);
    const bool equal = std::abs(v1 - v2) <= 1e-9;
    const bool expected = (n == 2) ? equal : (v2 > v1 + 1e-6);
    all_pass = all_pass && expected;
    std::cout << t << ',' << format_double(v1) << ',' << format_double(v2) << ','
              << (equal ? "equal" : (v2 > v1 ? "cube_greater" : "basis_greater")) << ','
              << (expected ? "pass" : "fail") << '\n';
  }
  return all_pass ? 0 : 1;
}

int cmd_bench(const std::string& config_path, int n, int rounds, int trials,
              std::uint64_t seed, const std::string& adversary, int parallelism,
              const std::string& out_dir, double d_default, double b_default) {
  ExperimentConfig cfg;
  if (!config_path.empty()) {
    cfg = parse_experiment_config(read_file(config_path));
  } else {
    cfg = default_ball_benchmark(n, rounds, trials, seed, parallelism, adversary);
  }
  // defaults forwarded to learners that take pretend-prior parameters
  for (LearnerSpec& spec : cfg.learners) {
    const bool takes_prior = spec.name == "pretend_hedge" || spec.name == "exp_weights_pretend" ||
                             spec.name == "first_order" || spec.name == "fpl";
    if (!takes_prior) continue;
    if (d_default > 0.0) spec.params.try_emplace("d", d_default);
    if (b_default > 0.0) spec.params.try_emplace("b", b_default);
  }
  const MaxRegretTable table = run_benchmark(cfg);
  std::ostringstream meta;
  meta << "generated " << timestamp() << " seed=" << cfg.seed << " adversary=" << cfg.adversary
       << " trials=" << cfg.trials << " dimension=" << cfg.dimension
       << " shared_sequences=true parallelism=" << cfg.parallelism;
  const std::string csv = table_to_csv(table, meta.str());
  const std::string csv_path = out_dir + "/bench.csv";
  const std::string svg_path = out_dir + "/bench.svg";
  write_file(csv_path, csv);
  write_file(svg_path, table_to_svg(table));
  std::cout << "wrote " << csv_path << " and " << svg_path << "\n";
  return 0;
}

int cmd_verify(bool list, const std::vector<std::string>& only) {
  if (list) {
    for (const std::string& id : acceptance_ids()) std::cout << id << "\n";
    return 0;
  }
  const int failures = run_acceptance(only, std::cout);
  return failures > 0 ? 1 : 0;
}

int cmd_plot(const std::string& in_path, const std::string& out_path) {
  const MaxRegretTable table = table_from_csv(read_file(in_path));
  write_file(out_path, table_to_svg(table));
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"horizonlab: anytime online-learning algorithms, exact game values, and benchmarks"};
  app.require_subcommand(1);

  // value
  auto* value = app.add_subcommand("value", "exact minimax values for the basis-vector game");
  int value_n = 2, value_t = 10;
  std::string value_out;
  value->add_option("--n", value_n, "number of actions");
  value->add_option("--t", value_t, "largest horizon to tabulate");
  value->add_option("--out", value_out, "also write the table as CSV");

  // solve
  auto* solve = app.add_subcommand("solve", "small-game solving and lower-bound series");
  bool solve_lower = false, solve_recursive = false, solve_compare = false;
  int solve_t0 = 60, solve_n = 2, solve_t = 4;
  std::string solve_example;
  std::size_t solve_budget = 1'000'000;
  solve->add_flag("--lower-bound", solve_lower, "evaluate the scaled-regret lower bound");
  solve->add_option("--t0", solve_t0, "truncation horizon for the lower bound (even)");
  solve->add_flag("--recursive", solve_recursive, "also run the recursion cross-check");
  solve->add_option("--example", solve_example, "reproduce a named worked example");
  solve->add_flag("--compare-spaces", solve_compare, "compare basis and binary-cube values");
  solve->add_option("--n", solve_n, "number of actions");
  solve->add_option("--t", solve_t, "horizon for comparisons");
  solve->add_option("--budget", solve_budget, "stage-solve budget override");

  // bench
  auto* bench = app.add_subcommand("bench", "max-regret benchmark with CSV and SVG output");
  std::string bench_config, bench_adversary = "sphere", bench_out = ".";
  int bench_n = 10, bench_rounds = 1000, bench_trials = 200, bench_par = 1;
  std::uint64_t bench_seed = 20260331;
  bench->add_option("--config", bench_config, "experiment config (JSON)");
  bench->add_option("--n", bench_n, "ball dimension");
  bench->add_option("--t", bench_rounds, "rounds per game");
  bench->add_option("--trials", bench_trials, "number of random adversaries");
  bench->add_option("--seed", bench_seed, "seed base");
  bench->add_option("--adversary", bench_adversary, "sphere or ball");
  bench->add_option("--parallelism", bench_par, "worker threads");
  bench->add_option("--out", bench_out, "output directory");
  double bench_d = -1.0, bench_b = -1.0;
  bench->add_option("--d", bench_d, "default pretend-prior exponent for learners that take one");
  bench->add_option("--b", bench_b, "default learning-rate constant for learners that take one");

  // verify
  auto* verify = app.add_subcommand("verify", "run the verification suite");
  bool verify_list = false;
  std::vector<std::string> verify_only;
  verify->add_flag("--list", verify_list, "list criterion identifiers");
  verify->add_option("--only", verify_only, "run only the named criteria");

  // plot
  auto* plot = app.add_subcommand("plot", "re-render a benchmark CSV as SVG");
  std::string plot_in, plot_out = "bench.svg";
  plot->add_option("--in", plot_in, "input CSV")->required();
  plot->add_option("--out", plot_out, "output SVG");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (value->parsed()) return cmd_value(value_n, value_t, value_out);
    if (solve->parsed()) {
      if (solve_lower) return cmd_solve_lower_bound(solve_t0, solve_recursive);
      if (!solve_example.empty()) return cmd_solve_example(solve_example);
      if (solve_compare) return cmd_solve_compare(solve_n, solve_t, solve_budget);
      throw config_error("solve needs one of --lower-bound, --example, --compare-spaces");
    }
    if (bench->parsed())
      return cmd_bench(bench_config, bench_n, bench_rounds, bench_trials, bench_seed,
                       bench_adversary, bench_par, bench_out, bench_d, bench_b);
    if (verify->parsed()) return cmd_verify(verify_list, verify_only);
    if (plot->parsed()) return cmd_plot(plot_in, plot_out);
  } catch (const budget_error& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 3;
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
