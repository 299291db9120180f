#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "horizonlab/common.hpp"
#include "horizonlab/loss_space.hpp"

namespace horizonlab {

// One stage of the value recursion:
//
//   value = min_{P in simplex} max_z ( P . Z_z + cont_z )
//
// Because sum_i P_i = 1, the objective equals min_P max_z sum_i P_i (Z_zi +
// cont_z): a zero-sum matrix game. It is solved as the classic game LP
// (shift payoffs positive, maximize sum u_i subject to u^T A <= 1), then the
// reported distribution is selected among the optimal face as the unique
// point of minimal Euclidean norm, found by an active-set projection.

struct StageGameSolution {
  ActionDistribution distribution;
  double value = 0.0;
};

namespace detail {

// Dense tableau simplex for: maximize sum(u) s.t. for each row z:
// sum_i u_i * payoff[z][i] <= 1, u >= 0. payoff must be strictly positive.
// Returns optimal u. Dantzig pricing with a Bland fallback for safety.
inline Vec game_lp(const std::vector<Vec>& payoff, int n) {
  const int m = static_cast<int>(payoff.size());
  const int cols = n + m + 1;
  std::vector<Vec> tab(static_cast<std::size_t>(m + 1), Vec(static_cast<std::size_t>(cols), 0.0));
  for (int z = 0; z < m; ++z) {
    for (int i = 0; i < n; ++i) tab[z][i] = payoff[static_cast<std::size_t>(z)][static_cast<std::size_t>(i)];
    tab[z][n + z] = 1.0;
    tab[z][cols - 1] = 1.0;
  }
  for (int i = 0; i < n; ++i) tab[m][i] = -1.0;  // reduced costs of max sum(u)

  std::vector<int> basis(static_cast<std::size_t>(m));
  for (int z = 0; z < m; ++z) basis[static_cast<std::size_t>(z)] = n + z;

  const int max_iters = 200 * (n + m);
  for (int iter = 0; iter < max_iters; ++iter) {
    const bool bland = iter > 50 * (n + m);
    int enter = -1;
    double best = -1e-12;
    for (int j = 0; j < n + m; ++j) {
      if (tab[m][j] < best) {
        best = tab[m][j];
        enter = j;
        if (bland) break;
      }
    }
    if (enter < 0) break;  // optimal

    int leave = -1;
    double best_ratio = 0.0;
    for (int z = 0; z < m; ++z) {
      const double a = tab[z][enter];
      if (a > 1e-12) {
        const double ratio = tab[z][cols - 1] / a;
        if (leave < 0 || ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 && basis[static_cast<std::size_t>(z)] < basis[static_cast<std::size_t>(leave)])) {
          best_ratio = ratio;
          leave = z;
        }
      }
    }
    if (leave < 0) throw std::runtime_error("game LP unbounded (payoffs not positive?)");

    const double pivot = tab[leave][enter];
    for (int j = 0; j < cols; ++j) tab[leave][j] /= pivot;
    for (int r = 0; r <= m; ++r) {
      if (r == leave) continue;
      const double f = tab[r][enter];
      if (f == 0.0) continue;
      for (int j = 0; j < cols; ++j) tab[r][j] -= f * tab[leave][j];
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  Vec u(static_cast<std::size_t>(n), 0.0);
  for (int z = 0; z < m; ++z)
    if (basis[static_cast<std::size_t>(z)] < n) u[static_cast<std::size_t>(basis[static_cast<std::size_t>(z)])] = tab[z][cols - 1];
  return u;
}

// Solves the symmetric linear system a * x = b (small, dense) by Gaussian
// elimination with partial pivoting; returns false if singular.
inline bool solve_dense(std::vector<Vec> a, Vec b, Vec& x) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-13) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j) a[r][j] -= f * a[col][j];
      b[r] -= f * b[col];
    }
  }
  x.assign(static_cast<std::size_t>(n), 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int j = r + 1; j < n; ++j) s -= a[r][j] * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(r)] = s / a[r][r];
  }
  return true;
}

struct LinearConstraint {
  Vec a;     // a . x <= b (or = b when equality)
  double b;
  bool equality;
};

// Minimizes ||x||^2 over {x : constraints}, starting from a feasible point.
// Plain active-set method; the Hessian is the identity so each subproblem is
// a projection solved through the KKT system C C^T theta = d, x = C^T theta.
inline Vec min_norm_point(const std::vector<LinearConstraint>& cons, Vec x) {
  const int dim = static_cast<int>(x.size());
  const int nc = static_cast<int>(cons.size());
  const double feas_tol = 1e-10;

  std::vector<bool> active(static_cast<std::size_t>(nc), false);
  for (int k = 0; k < nc; ++k)
    if (cons[static_cast<std::size_t>(k)].equality ||
        std::abs(dot(cons[static_cast<std::size_t>(k)].a, x) - cons[static_cast<std::size_t>(k)].b) <= feas_tol)
      active[static_cast<std::size_t>(k)] = true;

  for (int iter = 0; iter < 100 * (nc + dim); ++iter) {
    std::vector<int> w;
    for (int k = 0; k < nc; ++k)
      if (active[static_cast<std::size_t>(k)]) w.push_back(k);

    // Greedily drop rows that make C C^T singular (linearly dependent set).
    Vec theta;
    while (true) {
      const int nw = static_cast<int>(w.size());
      std::vector<Vec> gram(static_cast<std::size_t>(nw), Vec(static_cast<std::size_t>(nw), 0.0));
      Vec d(static_cast<std::size_t>(nw), 0.0);
      for (int r = 0; r < nw; ++r) {
        d[static_cast<std::size_t>(r)] = cons[static_cast<std::size_t>(w[static_cast<std::size_t>(r)])].b;
        for (int c = 0; c < nw; ++c)
          gram[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
              dot(cons[static_cast<std::size_t>(w[static_cast<std::size_t>(r)])].a,
                  cons[static_cast<std::size_t>(w[static_cast<std::size_t>(c)])].a);
      }
      if (nw == 0 || solve_dense(gram, d, theta)) break;
      // Drop the most recently added non-equality row.
      int drop = -1;
      for (int r = nw - 1; r >= 0; --r)
        if (!cons[static_cast<std::size_t>(w[static_cast<std::size_t>(r)])].equality) { drop = r; break; }
      if (drop < 0) throw std::runtime_error("degenerate equality system in stage selection");
      active[static_cast<std::size_t>(w[static_cast<std::size_t>(drop)])] = false;
      w.erase(w.begin() + drop);
    }

    Vec target(static_cast<std::size_t>(dim), 0.0);
    for (std::size_t r = 0; r < w.size(); ++r)
      for (int j = 0; j < dim; ++j)
        target[static_cast<std::size_t>(j)] += theta[r] * cons[static_cast<std::size_t>(w[r])].a[static_cast<std::size_t>(j)];

    //

    // Step toward the projected point, stopping at the first blocking
    // inactive constraint.
    double alpha = 1.0;
    int blocker = -1;
    for (int k = 0; k < nc; ++k) {
      if (active[static_cast<std::size_t>(k)] || cons[static_cast<std::size_t>(k)].equality) continue;
      const Vec& a = cons[static_cast<std::size_t>(k)].a;
      const double gx = dot(a, x);
      const double gt = dot(a, target);
      if (gt > cons[static_cast<std::size_t>(k)].b + feas_tol && gt > gx + 1e-16) {
        const double step = (cons[static_cast<std::size_t>(k)].b - gx) / (gt - gx);
        if (step < alpha) {
          alpha = std::max(0.0, step);
          blocker = k;
        }
      }
    }
    for (int j = 0; j < dim; ++j)
      x[static_cast<std::size_t>(j)] += alpha * (target[static_cast<std::size_t>(j)] - x[static_cast<std::size_t>(j)]);
    if (blocker >= 0) {
      active[static_cast<std::size_t>(blocker)] = true;
      continue;
    }

    // At the subproblem optimum: inequality multipliers lambda = -theta must
    // be nonnegative; otherwise release the worst offender.
    int release = -1;
    double worst = 1e-11;
    for (std::size_t r = 0; r < w.size(); ++r) {
      if (cons[static_cast<std::size_t>(w[r])].equality) continue;
      if (theta[r] > worst) {
        worst = theta[r];
        release = w[r];
      }
    }
    if (release < 0) return x;
    active[static_cast<std::size_t>(release)] = false;
  }
  return x;  // iteration guard: current iterate is feasible and near-optimal
}

}  // namespace detail

// continuations[z] is the value-to-go after the adversary plays space[z].
inline StageGameSolution solve_stage(const FiniteLossSpace& space, const Vec& continuations) {
  const int n = space.actions();
  const int m = static_cast<int>(space.size());
  if (static_cast<int>(continuations.size()) != m)
    throw std::invalid_argument("continuation count must match loss space size");

  double lo = continuations[0], hi = continuations[0];
  for (int z = 0; z < m; ++z) {
    lo = std::min(lo, continuations[static_cast<std::size_t>(z)]);
    hi = std::max(hi, continuations[static_cast<std::size_t>(z)] + 1.0);
  }
  const double shift = 1.0 - lo;  // payoffs >= 1 after shifting

  std::vector<Vec> payoff(static_cast<std::size_t>(m), Vec(static_cast<std::size_t>(n), 0.0));
  for (int z = 0; z < m; ++z)
    for (int i = 0; i < n; ++i)
      payoff[static_cast<std::size_t>(z)][static_cast<std::size_t>(i)] =
          space[static_cast<std::size_t>(z)][static_cast<std::size_t>(i)] +
          continuations[static_cast<std::size_t>(z)] + shift;

  const Vec u = detail::game_lp(payoff, n);
  const double total = std::accumulate(u.begin(), u.end(), 0.0);
  if (!(total > 0.0)) throw std::runtime_error("game LP returned a zero solution");
  const double shifted_value = 1.0 / total;
  const double value = shifted_value - shift;

  Vec p(u);
  for (double& x : p) x *= shifted_value;

  // Minimal-norm selection on the optimal face, slightly relaxed so the
  // floating-point optimum is strictly feasible.
  const double slack = 2e-11 * std::max(1.0, std::abs(shifted_value));
  std::vector<detail::LinearConstraint> cons;
  cons.push_back({Vec(static_cast<std::size_t>(n), 1.0), 1.0, true});
  for (int i = 0; i < n; ++i) {
    Vec a(static_cast<std::size_t>(n), 0.0);
    a[static_cast<std::size_t>(i)] = -1.0;
    cons.push_back({std::move(a), 0.0, false});
  }
  for (int z = 0; z < m; ++z)
    cons.push_back({payoff[static_cast<std::size_t>(z)], shifted_value + slack, false});

  // Clean the LP vertex into the relaxed polytope before projecting.
  for (double& x : p) x = std::max(0.0, x);
  double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= s;

  Vec selected = detail::min_norm_point(cons, p);
  for (double& x : selected) x = std::max(0.0, x);
  s = std::accumulate(selected.begin(), selected.end(), 0.0);
  for (double& x : selected) x /= s;

  StageGameSolution out;
  out.distribution = ActionDistribution{std::move(selected)};
  out.value = value;
  return out;
}

}  // namespace horizonlab
