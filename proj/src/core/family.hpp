#pragma once

#include "core/types.hpp"

namespace torusbif {

// The two-parameter torus family
//   dx/dt = Omega_x - cos 2pi(y - phi) - eps cos 2pi x
//   dy/dt = Omega_y - sin 2pi y       - eps sin 2pi x
// with eps > 0 small and phi in (1/24, 5/24) for the full bifurcation
// structure; the config itself only enforces the geometric validity bounds.
struct SystemConfig {
  double epsilon;
  double phi;
  double C;  // cos 2pi phi
  double S;  // sin 2pi phi

  // Validates 0 < epsilon < 1/kappa_max(phi) and |phi| < 1/4.
  static SystemConfig make(double epsilon, double phi);
};

struct ParamPoint {
  double omega_x = 0.0;
  double omega_y = 0.0;
};

// Torus state; representatives are normalised to [0,1) at API boundaries.
struct StatePoint {
  double x = 0.0;
  double y = 0.0;

  StatePoint normalised() const { return {wrap01(x), wrap01(y)}; }
};

Vec2 eval_field(const SystemConfig& cfg, const ParamPoint& omega, const StatePoint& s);

// Derivative of the field with respect to the state; independent of Omega.
Mat2 jacobian(const SystemConfig& cfg, const StatePoint& s);

// Symmetric bilinear form D^2_x G (v1, v2).
Vec2 second_derivative(const SystemConfig& cfg, const StatePoint& s, const Vec2& v1,
                       const Vec2& v2);

// Monotonicity constant c with <D_Omega G w, w> >= c |w|^2; equals 1 for this
// family (D_Omega G = Id), re-verified by finite differences at random points.
double monotonicity_constant(const SystemConfig& cfg);

}  // namespace torusbif
