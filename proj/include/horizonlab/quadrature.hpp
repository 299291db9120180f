#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace horizonlab {

class quadrature_error : public std::runtime_error {
 public:
  explicit quadrature_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule,
// on [-1, 1]. All nodes are interior, so integrable endpoint
// singularities are never evaluated directly.
inline constexpr double kGK15Nodes[15] = {
    -0.991455371120812639206854697526, -0.949107912342758524526189684048,
    -0.864864423359769072789712788641, -0.741531185599394439863864773281,
    -0.586087235467691130294144838259, -0.405845151377397166906606412077,
    -0.207784955007898467600689403773, 0.0,
    0.207784955007898467600689403773,  0.405845151377397166906606412077,
    0.586087235467691130294144838259,  0.741531185599394439863864773281,
    0.864864423359769072789712788641,  0.949107912342758524526189684048,
    0.991455371120812639206854697526};

inline constexpr double kK15Weights[15] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
    0.204432940075298892414161999234649, 0.190350578064785409913256402421014,
    0.169004726639267902826583426598550, 0.140653259715525918745189590510238,
    0.104790010322250183839876322541518, 0.063092092629978553290700663189204,
    0.022935322010529224963732008058970};

inline constexpr double kG7Weights[7] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
    0.381830050505118944950369775488975, 0.279705391489276667901467771423780,
    0.129484966168869693270611432679082};

struct Segment {
  double a, b, value, error;
};

template <typename F>
Segment gk15(const F& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double k = 0.0, g = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double fx = f(mid + half * kGK15Nodes[i]);
    k += kK15Weights[i] * fx;
    if (i % 2 == 1) g += kG7Weights[i / 2] * fx;
  }
  k *= half;
  g *= half;
  // |K - G| is a conservative error proxy for the Kronrod value.
  return {a, b, k, std::max(std::abs(k - g), 1e-300)};
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration: repeatedly bisect the segment
// with the largest error estimate until the summed error meets the global
// tolerance. Robust to integrable endpoint singularities.
template <typename F>
double integrate(const F& f, double a, double b, double rel_tol = 1e-10,
                 double abs_tol = 1e-300, std::size_t max_segments = 4096) {
  if (a == b) return 0.0;
  std::vector<detail::Segment> segs;
  segs.push_back(detail::gk15(f, a, b));
  while (true) {
    double total = 0.0, err = 0.0, worst = -1.0;
    std::size_t worst_i = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
      total += segs[i].value;
      err += segs[i].error;
      if (segs[i].error > worst) {
        worst = segs[i].error;
        worst_i = i;
      }
    }
    if (err <= abs_tol || err <= rel_tol * std::abs(total)) return total;
    if (segs.size() >= max_segments)
      throw quadrature_error("adaptive quadrature failed to converge");
    const detail::Segment s = segs[worst_i];
    const double mid = 0.5 * (s.a + s.b);
    if (mid <= s.a || mid >= s.b) return total;  // interval exhausted at fp resolution
    segs[worst_i] = detail::gk15(f, s.a, mid);
    segs.push_back(detail::gk15(f, mid, s.b));
  }
}

// Integrates f over [a, +inf) via the substitution u = a/x (requires a > 0),
// which maps the domain to u in (0, 1] with integrand f(a/u) * a / u^2.
template <typename F>
double integrate_to_infinity(const F& f, double a, double rel_tol = 1e-10,
                             double abs_tol = 1e-300, std::size_t max_segments = 4096) {
  if (!(a > 0.0)) throw std::invalid_argument("integrate_to_infinity requires a > 0");
  auto g = [&](double u) {
    const double x = a / u;
    return f(x) * a / (u * u);
  };
  return integrate(g, 0.0, 1.0, rel_tol, abs_tol, max_segments);
}

}  // namespace horizonlab
