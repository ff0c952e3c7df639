#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "core/error.hpp"
#include "core/types.hpp"

namespace torusbif {

// Bisection on a bracketing interval; f(a) and f(b) must have opposite signs.
template <class F>
double bisect(F&& f, double a, double b, double xtol = 1e-13, int max_iter = 200) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) fail(errc::invalid_argument, "bisect: interval does not bracket a root");
  for (int i = 0; i < max_iter && std::fabs(b - a) > xtol; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Golden-section maximisation of a unimodal function on [a, b].
template <class F>
double golden_max(F&& f, double a, double b, double xtol = 1e-12) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > xtol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

// Damped Newton for F: R^2 -> R^2 with analytic Jacobian.
template <class F, class J>
Vec2 newton2(F&& f, J&& jac, Vec2 guess, double ftol = 1e-12, int max_iter = 50) {
  Vec2 z = guess;
  int stalls = 0;
  for (int i = 0; i < max_iter && stalls < 3; ++i) {
    const Vec2 r = f(z);
    if (std::fabs(r.x) < ftol && std::fabs(r.y) < ftol) return z;
    const Mat2 m = jac(z);
    if (std::fabs(m.det()) < 1e-300) break;
    Vec2 step = solve2(m, -r);
    // halve the step until the residual does not blow up
    const double rn0 = std::fabs(r.x) + std::fabs(r.y);
    double rn1 = rn0;
    for (int k = 0; k < 12; ++k) {
      const Vec2 trial = z + step;
      const Vec2 rt = f(trial);
      rn1 = std::fabs(rt.x) + std::fabs(rt.y);
      if (rn1 <= rn0 || k == 11) {
        z = trial;
        break;
      }
      step = step * 0.5;
    }
    stalls = rn1 > 0.9 * rn0 ? stalls + 1 : 0;
  }
  const Vec2 r = f(z);
  if (std::fabs(r.x) < ftol && std::fabs(r.y) < ftol) return z;
  fail(errc::no_convergence, "newton2: no convergence");
}

// Adaptive Gauss-Kronrod quadrature on [a, b].
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-10, unsigned max_depth = 25) {
  double error = 0.0;
  const double q = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      std::forward<F>(f), a, b, max_depth, rel_tol, &error);
  const double scale = std::max(std::fabs(q), 1.0);
  if (!(std::isfinite(q)) || error > 1e-6 * scale)
    fail(errc::quadrature_failure, "integrate: requested tolerance not reached");
  return q;
}

// tanh-sinh quadrature on [a, b]; robust for integrands with steep but
// integrable endpoint behaviour where the Gauss-Kronrod error estimate is
// overly pessimistic.
template <class F>
double integrate_ts(F&& f, double a, double b, double rel_tol = 1e-10) {
  boost::math::quadrature::tanh_sinh<double> ts;
  double error = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  const double q = ts.integrate(std::forward<F>(f), a, b, rel_tol, &error, &l1, &levels);
  if (!(std::isfinite(q)) || error > 1e-6 * std::max(l1, 1.0))
    fail(errc::quadrature_failure, "integrate_ts: requested tolerance not reached");
  return q;
}

// Integrates f over [a, b] where f ~ 1/sqrt(x - a) and ~ 1/sqrt(b - x) at the
// endpoints, using x = a + u^2 / x = b - u^2 and a split at the midpoint.
template <class F>
double integrate_endpoint_singular(F&& f, double a, double b, double rel_tol = 1e-10) {
  const double m = 0.5 * (a + b);
  auto left = [&](double u) { return 2.0 * u * f(a + u * u); };
  auto right = [&](double u) { return 2.0 * u * f(b - u * u); };
  return integrate(left, 0.0, std::sqrt(m - a), rel_tol) +
         integrate(right, 0.0, std::sqrt(b - m), rel_tol);
}

// Neville polynomial extrapolation of samples (h_i, y_i) to h = 0.
inline double extrapolate_to_zero(std::vector<double> h, std::vector<double> y) {
  const std::size_t n = h.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = 0; i + level < n; ++i)
      y[i] = y[i + 1] + (y[i + 1] - y[i]) * h[i + level] / (h[i] - h[i + level]);
  return y[0];
}

// Richardson limit of g(h) as h -> 0+ on the geometric ladder h0 * factor^k.
template <class G>
double richardson_limit(G&& g, double h0, int n_samples = 5, double factor = 0.25) {
  std::vector<double> hs, ys;
  double h = h0;
  for (int k = 0; k < n_samples; ++k, h *= factor) {
    hs.push_back(h);
    ys.push_back(g(h));
  }
  return extrapolate_to_zero(hs, ys);
}

}  // namespace torusbif
