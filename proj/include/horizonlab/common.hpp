#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace horizonlab {

using Vec = std::vector<double>;

// Thrown when an exact computation would exceed its configured state or
// node budget. Callers are expected to switch to a sampling estimator or
// shrink the instance rather than wait forever.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double min_entry(const Vec& a) {
  double m = a[0];
  for (double x : a) m = std::min(m, x);
  return m;
}

inline double max_entry(const Vec& a) {
  double m = a[0];
  for (double x : a) m = std::max(m, x);
  return m;
}

inline std::size_t argmin_index(const Vec& a) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i] < a[best]) best = i;
  return best;
}

// A decision of a Hedge learner: probability weights over N actions.
// Entries may carry tiny negative rounding noise; clamp() removes it.
struct ActionDistribution {
  Vec weights;

  std::size_t size() const { return weights.size(); }
  double operator[](std::size_t i) const { return weights[i]; }

  void clamp(double floor_tol = 1e-12) {
    for (double& w : weights) {
      if (w < 0.0) {
        if (w < -floor_tol) throw std::domain_error("negative weight beyond tolerance");
        w = 0.0;
      }
    }
  }

  bool valid(double sum_tol = 1e-9, double neg_tol = 1e-12) const {
    double s = 0.0;
    for (double w : weights) {
      if (w < -neg_tol) return false;
      s += w;
    }
    return std::abs(s - 1.0) <= sum_tol;
  }
};

inline ActionDistribution uniform_distribution(int n) {
  return ActionDistribution{Vec(static_cast<std::size_t>(n), 1.0 / n)};
}

// splitmix64: cheap counter-based seed derivation. Used to give every
// sample path / trial its own independent stream regardless of the order
// in which trials execute.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(splitmix64(base) ^ splitmix64(index * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL));
}

}  // namespace horizonlab
