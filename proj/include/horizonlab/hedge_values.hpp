#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <mutex>
#include <random>
#include <unordered_map>

#include "horizonlab/common.hpp"

namespace horizonlab {

// Exact value functions for the Hedge game whose loss space is the set of
// standard basis vectors (one action suffers one unit of loss per round).
//
//   R(M, 0) = min_i M_i
//   R(M, r) = (1/N) sum_i R(M + e_i, r - 1)
//   V(M, r) = r/N - R(M, r)
//
// R(M, r) is the expected best-action loss when the remaining r rounds are
// played uniformly at random; V is the minimax regret-to-go. Both are
// invariant under permuting actions and shift by a common constant
// (V(M + a*1, r) = V(M, r) - a), so the memo key is the sorted vector of
// offsets M_i - min_j M_j together with r.

// (1/N) * sqrt(2 (N-1) ln N). V(0, T) <= c_N sqrt(T); maximal near N = 4.
inline double c_n(int n) {
  if (n < 2) throw std::invalid_argument("c_n requires N >= 2");
  return std::sqrt(2.0 * (n - 1) * std::log(static_cast<double>(n))) / n;
}

// Exact value of the N = 2 game with zero initial losses:
//   S(T) = (T / 2^T) * binom(T-1, floor(T/2)).
// Exact integer arithmetic up to T = 64, log-gamma beyond; stable to T ~ 1e6.
inline double two_action_game_value(std::int64_t t) {
  if (t < 1) throw std::invalid_argument("two_action_game_value requires T >= 1");
  const std::int64_t n = t - 1, k = t / 2;
  if (t <= 64) {
    // binom(n, k) via the multiplicative rule in 128-bit arithmetic.
    unsigned __int128 num = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
      num = num * static_cast<unsigned __int128>(n - k + i);
      num /= static_cast<unsigned __int128>(i);
    }
    long double binom = static_cast<long double>(num);
    return static_cast<double>(static_cast<long double>(t) * binom /
                               std::pow(2.0L, static_cast<long double>(t)));
  }
  const double lg = std::lgamma(static_cast<double>(n + 1)) -
                    std::lgamma(static_cast<double>(k + 1)) -
                    std::lgamma(static_cast<double>(n - k + 1));
  return std::exp(std::log(static_cast<double>(t)) + lg -
                  static_cast<double>(t) * std::log(2.0));
}

class HedgeValueTable {
 public:
  explicit HedgeValueTable(int n, std::size_t state_budget = 10'000'000)
      : n_(n), state_budget_(state_budget) {
    if (n < 2) throw std::invalid_argument("HedgeValueTable requires N >= 2");
  }

  int actions() const { return n_; }
  std::size_t states() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return memo_.size();
  }

  double random_walk_r(const Vec& m, int r) const {
    check_vector(m);
    if (r < 0) throw std::invalid_argument("rounds must be >= 0");
    const double base = min_entry(m);
    Vec offsets(m);
    for (double& x : offsets) x -= base;
    std::sort(offsets.begin(), offsets.end());
    return base + normalized_r(offsets, r);
  }

  double minimax_v(const Vec& m, int r) const {
    return r / static_cast<double>(n_) - random_walk_r(m, r);
  }

  // P_i = V(M, r) - V(M + e_i, r - 1), equivalently
  // P_i = 1/N + R(M + e_i, r - 1) - R(M, r).
  ActionDistribution minimax_weights(const Vec& m, int r) const {
    check_vector(m);
    if (r < 1) throw std::invalid_argument("minimax_weights requires r >= 1");
    const double rm = random_walk_r(m, r);
    ActionDistribution p{Vec(m.size(), 0.0)};
    Vec bumped(m);
    for (std::size_t i = 0; i < m.size(); ++i) {
      bumped[i] += 1.0;
      p.weights[i] = 1.0 / n_ + random_walk_r(bumped, r - 1) - rm;
      bumped[i] -= 1.0;
    }
    p.clamp();
    return p;
  }

  struct Estimate {
    double value;
    double std_err;
  };

  // Unbiased Monte Carlo estimate of R(M, r): each sample path draws its own
  // uniform basis-vector stream from a seed derived by path index, so the
  // result is reproducible for a given seed independent of evaluation order.
  Estimate estimate_r(const Vec& m, int r, std::int64_t samples, std::uint64_t seed) const {
    check_vector(m);
    if (r < 0) throw std::invalid_argument("rounds must be >= 0");
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    double sum = 0.0, sumsq = 0.0;
    Vec state(m.size());
    for (std::int64_t p = 0; p < samples; ++p) {
      std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(p)));
      std::uniform_int_distribution<int> pick(0, n_ - 1);
      state = m;
      for (int step = 0; step < r; ++step) state[static_cast<std::size_t>(pick(rng))] += 1.0;
      const double x = min_entry(state);
      sum += x;
      sumsq += x * x;
    }
    const double mean = sum / static_cast<double>(samples);
    double se = 0.0;
    if (samples > 1) {
      const double var =
          std::max(0.0, (sumsq - samples * mean * mean) / static_cast<double>(samples - 1));
      se = std::sqrt(var / static_cast<double>(samples));
    }
    return {mean, se};
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
    if (static_cast<int>(m.size()) != n_)
      throw std::invalid_argument("loss vector has wrong dimension");
    for (double x : m)
      if (!std::isfinite(x)) throw std::invalid_argument("loss entries must be finite");
  }

  static std::vector<std::uint64_t> make_key(const Vec& sorted_offsets, int r) {
    std::vector<std::uint64_t> key;
    key.reserve(sorted_offsets.size() + 1);
    key.push_back(static_cast<std::uint64_t>(r));
    for (double x : sorted_offsets) {
      std::uint64_t bits;
      static_assert(sizeof(bits) == sizeof(x));
      std::memcpy(&bits, &x, sizeof(bits));
      key.push_back(bits);
    }
    return key;
  }

  // offsets sorted ascending with offsets[0] == 0.
  double normalized_r(const Vec& offsets, int r) const {
    if (r == 0) return 0.0;
    const auto key = make_key(offsets, r);
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
      if (memo_.size() >= state_budget_)
        throw budget_error("hedge value memo exceeded its state budget");
    }
    double acc = 0.0;
    Vec child(offsets);
    for (std::size_t i = 0; i < offsets.size();) {
      // All members of a block of equal offsets yield the same sorted child.
      std::size_t block = i + 1;
      while (block < offsets.size() && offsets[block] == offsets[i]) ++block;
      child = offsets;
      child[i] += 1.0;
      const double base = min_entry(child);
      for (double& x : child) x -= base;
      std::sort(child.begin(), child.end());
      acc += static_cast<double>(block - i) * (base + normalized_r(child, r - 1));
      i = block;
    }
    const double value = acc / n_;
    std::lock_guard<std::mutex> lock(mutex_);
    memo_.emplace(key, value);
    return value;
  }

  int n_;
  std::size_t state_budget_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::vector<std::uint64_t>, double, KeyHash> memo_;
};

}  // namespace horizonlab
