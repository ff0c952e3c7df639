#include "core/family.hpp"

#include <cmath>
#include <random>

#include "core/error.hpp"
#include "core/geometry.hpp"

namespace torusbif {

SystemConfig SystemConfig::make(double epsilon, double phi) {
  if (!(epsilon > 0.0)) fail(errc::invalid_argument, "epsilon must be positive");
  if (!(std::fabs(phi) < 0.25)) fail(errc::invalid_argument, "phi must lie in (-1/4, 1/4)");
  SystemConfig cfg{epsilon, phi, std::cos(kTwoPi * phi), std::sin(kTwoPi * phi)};
  const double kappa = curvature_max(cfg);
  if (!(epsilon < 1.0 / kappa))
    fail(errc::invalid_argument, "epsilon must be below 1/kappa_max of the base ellipse");
  return cfg;
}

Vec2 eval_field(const SystemConfig& cfg, const ParamPoint& omega, const StatePoint& s0) {
  const StatePoint s = s0.normalised();
  return {omega.omega_x - std::cos(kTwoPi * (s.y - cfg.phi)) - cfg.epsilon * std::cos(kTwoPi * s.x),
          omega.omega_y - std::sin(kTwoPi * s.y) - cfg.epsilon * std::sin(kTwoPi * s.x)};
}

Mat2 jacobian(const SystemConfig& cfg, const StatePoint& s0) {
  const StatePoint s = s0.normalised();
  const double e = cfg.epsilon;
  return {kTwoPi * e * std::sin(kTwoPi * s.x), kTwoPi * std::sin(kTwoPi * (s.y - cfg.phi)),
          -kTwoPi * e * std::cos(kTwoPi * s.x), -kTwoPi * std::cos(kTwoPi * s.y)};
}

Vec2 second_derivative(const SystemConfig& cfg, const StatePoint& s0, const Vec2& v1,
                       const Vec2& v2) {
  const StatePoint s = s0.normalised();
  const double c = kTwoPi * kTwoPi;
  const double xx = v1.x * v2.x;
  const double yy = v1.y * v2.y;
  return {c * (cfg.epsilon * std::cos(kTwoPi * s.x) * xx + std::cos(kTwoPi * (s.y - cfg.phi)) * yy),
          c * (cfg.epsilon * std::sin(kTwoPi * s.x) * xx + std::sin(kTwoPi * s.y) * yy)};
}

double monotonicity_constant(const SystemConfig& cfg) {
  // D_Omega G is the identity; confirm by differencing at random points.
  std::mt19937_64 rng(20240811u);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double h = 1e-6;
  double min_quad = 1.0;
  for (int i = 0; i < 100; ++i) {
    const ParamPoint om{2.0 * uni(rng) - 1.0, 2.0 * uni(rng) - 1.0};
    const StatePoint s{uni(rng), uni(rng)};
    const double ang = kTwoPi * uni(rng);
    const Vec2 w{std::cos(ang), std::sin(ang)};
    const Vec2 gp = eval_field(cfg, {om.omega_x + h * w.x, om.omega_y + h * w.y}, s);
    const Vec2 gm = eval_field(cfg, {om.omega_x - h * w.x, om.omega_y - h * w.y}, s);
    const Vec2 dw = (gp - gm) / (2.0 * h);
    min_quad = std::min(min_quad, dot(dw, w));
  }
  if (std::fabs(min_quad - 1.0) > 1e-6)
    fail(errc::invalid_argument, "monotonicity certificate failed");
  return 1.0;
}

}  // namespace torusbif
