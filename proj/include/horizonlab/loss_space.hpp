#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "horizonlab/common.hpp"

namespace horizonlab {

// A finite set of distinct loss vectors inside [0,1]^N. The named
// constructors cover the spaces the solver experiments use: basis vectors,
// the full binary hypercube, and the complemented basis {1 - e_i}.
class FiniteLossSpace {
 public:
  FiniteLossSpace(int n, std::vector<Vec> vectors) : n_(n), vectors_(std::move(vectors)) {
    if (n_ < 2) throw std::invalid_argument("loss space requires N >= 2");
    if (vectors_.empty()) throw std::invalid_argument("loss space must be non-empty");
    std::set<Vec> seen;
    for (const Vec& z : vectors_) {
      if (static_cast<int>(z.size()) != n_)
        throw std::invalid_argument("loss vector has wrong dimension");
      for (double x : z)
        if (x < 0.0 || x > 1.0) throw std::invalid_argument("loss entries must be in [0,1]");
      if (!seen.insert(z).second) throw std::invalid_argument("duplicate loss vector");
    }
    permutation_closed_ = detect_permutation_closure();
  }

  static FiniteLossSpace basis(int n) {
    std::vector<Vec> vs;
    for (int i = 0; i < n; ++i) {
      Vec z(static_cast<std::size_t>(n), 0.0);
      z[static_cast<std::size_t>(i)] = 1.0;
      vs.push_back(std::move(z));
    }
    return FiniteLossSpace(n, std::move(vs));
  }

  static FiniteLossSpace hypercube(int n) {
    if (n > 16) throw std::invalid_argument("hypercube space limited to N <= 16");
    std::vector<Vec> vs;
    for (int mask = 0; mask < (1 << n); ++mask) {
      Vec z(static_cast<std::size_t>(n), 0.0);
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) z[static_cast<std::size_t>(i)] = 1.0;
      vs.push_back(std::move(z));
    }
    return FiniteLossSpace(n, std::move(vs));
  }

  static FiniteLossSpace complemented_basis(int n) {
    std::vector<Vec> vs;
    for (int i = 0; i < n; ++i) {
      Vec z(static_cast<std::size_t>(n), 1.0);
      z[static_cast<std::size_t>(i)] = 0.0;
      vs.push_back(std::move(z));
    }
    return FiniteLossSpace(n, std::move(vs));
  }

  int actions() const { return n_; }
  std::size_t size() const { return vectors_.size(); }
  const std::vector<Vec>& vectors() const { return vectors_; }
  const Vec& operator[](std::size_t i) const { return vectors_[i]; }

  // True when applying any permutation of coordinates maps the set onto
  // itself; this licenses sorted memo keys in the value recursion.
  bool permutation_closed() const { return permutation_closed_; }

 private:
  bool detect_permutation_closure() const {
    std::vector<int> perm(static_cast<std::size_t>(n_));
    std::iota(perm.begin(), perm.end(), 0);
    std::set<Vec> base(vectors_.begin(), vectors_.end());
    while (std::next_permutation(perm.begin(), perm.end())) {
      for (const Vec& z : vectors_) {
        Vec mapped(z.size());
        for (std::size_t i = 0; i < z.size(); ++i)
          mapped[static_cast<std::size_t>(perm[i])] = z[i];
        if (!base.count(mapped)) return false;
      }
    }
    return true;
  }

  int n_;
  std::vector<Vec> vectors_;
  bool permutation_closed_;
};

}  // namespace horizonlab
