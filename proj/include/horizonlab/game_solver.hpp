#pragma once

#include <algorithm>
#include <cstring>
#include <map>
#include <unordered_map>
#include <vector>

#include "horizonlab/common.hpp"
#include "horizonlab/loss_space.hpp"
#include "horizonlab/stage_game.hpp"

namespace horizonlab {

// Exact minimax values over an arbitrary finite loss space:
//
//   V(M, 0) = -min_i M_i
//   V(M, r) = min_{P in simplex} max_{Z in LS} ( P . Z + V(M + Z, r - 1) )
//
// States are memoized after subtracting min_i M_i (values shift with M by a
// common constant for every loss space) and, when the space is closed under
// coordinate permutations, after sorting the offsets.
//
// The memo is not synchronized: a solver instance is single-threaded, and
// concurrent tasks each build their own.
class GameSolver {
 public:
  explicit GameSolver(FiniteLossSpace space, std::size_t node_budget = 1'000'000)
      : space_(std::move(space)), node_budget_(node_budget) {}

  const FiniteLossSpace& space() const { return space_; }
  std::size_t stage_solves() const { return stage_solves_; }

  double exact_value(const Vec& m, int r) {
    check_vector(m);
    if (r < 0) throw std::invalid_argument("rounds must be >= 0");
    return value_rec(m, r);
  }

  // The optimal stage decision at a state with r >= 1 rounds remaining.
  StageGameSolution solve_state(const Vec& m, int r) {
    check_vector(m);
    if (r < 1) throw std::invalid_argument("solve_state requires r >= 1");
    Vec cont(space_.size());
    for (std::size_t z = 0; z < space_.size(); ++z) {
      Vec next(m);
      for (std::size_t i = 0; i < next.size(); ++i) next[i] += space_[z][i];
      cont[z] = value_rec(next, r - 1);
    }
    ++stage_solves_;
    return solve_stage(space_, cont);
  }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& key) const {
      std::size_t h = 0xcbf29ce484222325ULL;
      for (std::uint64_t v : key) {
        h ^= static_cast<std::size_t>(v);
        h *= 0x100000001b3ULL;
      }
      return h;
    }
  };

  void check_vector(const Vec& m) const {
    if (static_cast<int>(m.size()) != space_.actions())
      throw std::invalid_argument("state vector has wrong dimension");
  }

  std::vector<std::uint64_t> make_key(const Vec& m, int r, double* base_out) const {
    Vec offsets(m);
    const double base = min_entry(offsets);
    for (double& x : offsets) x -= base;
    if (space_.permutation_closed()) std::sort(offsets.begin(), offsets.end());
    *base_out = base;
    std::vector<std::uint64_t> key;
    key.reserve(offsets.size() + 1);
    key.push_back(static_cast<std::uint64_t>(r));
    for (double x : offsets) {
      std::uint64_t bits;
      std::memcpy(&bits, &x, sizeof(bits));
      key.push_back(bits);
    }
    return key;
  }

  double value_rec(const Vec& m, int r) {
    if (r == 0) return -min_entry(m);
    double base = 0.0;
    const auto key = make_key(m, r, &base);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second - base;

    Vec cont(space_.size());
    Vec next(m.size());
    for (std::size_t z = 0; z < space_.size(); ++z) {
      next = m;
      for (std::size_t i = 0; i < next.size(); ++i) next[i] += space_[z][i];
      cont[z] = value_rec(next, r - 1);
    }
    if (++stage_solves_ > node_budget_)
      throw budget_error("game solver exceeded its stage-solve budget");
    const double value = solve_stage(space_, cont).value;
    memo_.emplace(key, value + base);
    return value;
  }

  FiniteLossSpace space_;
  std::size_t node_budget_;
  std::size_t stage_solves_ = 0;
  std::unordered_map<std::vector<std::uint64_t>, double, KeyHash> memo_;
};

// A distribution over finitely many horizons, used by the random-horizon
// game recursion and the random-horizon learner.
struct FiniteHorizonPrior {
  std::vector<int> support;  // strictly increasing
  Vec probs;                 // matching, sums to 1

  static FiniteHorizonPrior uniform(int lo, int hi) {
    FiniteHorizonPrior p;
    for (int t = lo; t <= hi; ++t) {
      p.support.push_back(t);
      p.probs.push_back(1.0 / (hi - lo + 1));
    }
    return p;
  }

  static FiniteHorizonPrior point_mass(int t) {
    return FiniteHorizonPrior{{t}, {1.0}};
  }

  int max_support() const { return support.back(); }

  double tail_mass(int t) const {
    double s = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i)
      if (support[i] >= t) s += probs[i];
    return s;
  }

  // Pr[T = t | T >= t]; equals 1 at the last supported horizon.
  double stop_prob(int t) const {
    const double tail = tail_mass(t);
    if (tail <= 0.0) throw std::invalid_argument("conditioning event has zero mass");
    double point = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i)
      if (support[i] == t) point = probs[i];
    return point / tail;
  }
};

// Value of the game whose horizon is drawn from a known finite prior:
//
//   Vbar_t(M) = min_P max_Z ( P . Z + q(t,t) V(M+Z, 0)
//                                   + (1 - q(t,t)) Vbar_{t+1}(M+Z) )
//
// with q(t,t) = Pr[T = t | T >= t]. Past the last supported horizon the
// game has surely stopped, so the recursion terminates there.
class RandomHorizonSolver {
 public:
  RandomHorizonSolver(FiniteLossSpace space, FiniteHorizonPrior prior,
                      std::size_t node_budget = 1'000'000)
      : space_(std::move(space)), prior_(std::move(prior)), node_budget_(node_budget) {}

  std::size_t stage_solves() const { return stage_solves_; }

  StageGameSolution solve_round(int t, const Vec& m) {
    if (t > prior_.max_support())
      throw std::invalid_argument("round is beyond the prior's support");
    return stage(t, m);
  }

  double value(int t, const Vec& m) { return solve_round(t, m).value; }

 private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& key) const {
      std::size_t h = 0xcbf29ce484222325ULL;
      for (std::uint64_t v : key) {
        h ^= static_cast<std::size_t>(v);
        h *= 0x100000001b3ULL;
      }
      return h;
    }
  };

  std::vector<std::uint64_t> make_key(const Vec& m, int t, double* base_out) const {
    Vec offsets(m);
    const double base = min_entry(offsets);
    for (double& x : offsets) x -= base;
    if (space_.permutation_closed()) std::sort(offsets.begin(), offsets.end());
    *base_out = base;
    std::vector<std::uint64_t> key;
    key.push_back(static_cast<std::uint64_t>(t));
    for (double x : offsets) {
      std::uint64_t bits;
      std::memcpy(&bits, &x, sizeof(bits));
      key.push_back(bits);
    }
    return key;
  }

  double value_rec(int t, const Vec& m) {
    double base = 0.0;
    const auto key = make_key(m, t, &base);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second - base;
    const double v = stage(t, m).value;
    memo_.emplace(key, v + base);
    return v;
  }

  StageGameSolution stage(int t, const Vec& m) {
    const double q = prior_.stop_prob(t);
    Vec cont(space_.size());
    Vec next(m.size());
    for (std::size_t z = 0; z < space_.size(); ++z) {
      next = m;
      for (std::size_t i = 0; i < next.size(); ++i) next[i] += space_[z][i];
      const double stopped = -min_entry(next);
      const double continued = (q >= 1.0) ? 0.0 : value_rec(t + 1, next);
      cont[z] = q * stopped + (1.0 - q) * continued;
    }
    if (++stage_solves_ > node_budget_)
      throw budget_error("random-horizon solver exceeded its stage-solve budget");
    return solve_stage(space_, cont);
  }

  FiniteLossSpace space_;
  FiniteHorizonPrior prior_;
  std::size_t node_budget_;
  std::size_t stage_solves_ = 0;
  std::unordered_map<std::vector<std::uint64_t>, double, KeyHash> memo_;
};

}  // namespace horizonlab
