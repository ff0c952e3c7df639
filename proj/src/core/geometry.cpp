#include "core/geometry.hpp"

#include <array>
#include <cmath>

#include "core/error.hpp"
#include "core/numerics.hpp"

namespace torusbif {

const char* region_tag_name(RegionTag t) {
  switch (t) {
    case RegionTag::Hole: return "hole";
    case RegionTag::ResonanceInterior: return "resonance_interior";
    case RegionTag::InnerBoundary: return "inner_boundary";
    case RegionTag::OuterBoundary: return "outer_boundary";
    case RegionTag::Outside: return "outside";
  }
  return "unknown";
}

ParamPoint psi(const SystemConfig& cfg, double theta) {
  return {std::cos(kTwoPi * (theta - cfg.phi)), std::sin(kTwoPi * theta)};
}

Vec2 psi_prime(const SystemConfig& cfg, double theta) {
  return {-kTwoPi * std::sin(kTwoPi * (theta - cfg.phi)), kTwoPi * std::cos(kTwoPi * theta)};
}

Vec2 psi_second(const SystemConfig& cfg, double theta) {
  const double c = kTwoPi * kTwoPi;
  return {-c * std::cos(kTwoPi * (theta - cfg.phi)), -c * std::sin(kTwoPi * theta)};
}

Vec2 psi_normal(const SystemConfig& cfg, double theta) {
  const Vec2 t = psi_prime(cfg, theta);
  const double n = norm(t);
  // psi runs anticlockwise for phi in (-1/4,1/4), so (t_y, -t_x) points outward.
  return {t.y / n, -t.x / n};
}

double curvature(const SystemConfig& cfg, double theta) {
  const Vec2 d1 = psi_prime(cfg, theta);
  const Vec2 d2 = psi_second(cfg, theta);
  const double n = norm(d1);
  return std::fabs(cross(d1, d2)) / (n * n * n);
}

double curvature_max(const SystemConfig& cfg) {
  constexpr int n = 4096;
  double best = -1.0;
  int best_i = 0;
  for (int i = 0; i < n; ++i) {
    const double k = curvature(cfg, double(i) / n);
    if (k > best) {
      best = k;
      best_i = i;
    }
  }
  const double lo = double(best_i - 1) / n;
  const double hi = double(best_i + 1) / n;
  const double th = golden_max([&](double t) { return curvature(cfg, t); }, lo, hi, 1e-12);
  return curvature(cfg, th);
}

ParamPoint tubular_to_param(const SystemConfig& cfg, const TubularCoord& tc) {
  if (!(tc.r > -1.0 / curvature_max(cfg)))
    fail(errc::degenerate, "tubular_to_param: r <= -1/kappa_max");
  const ParamPoint base = psi(cfg, tc.theta);
  const Vec2 n = psi_normal(cfg, tc.theta);
  return {base.omega_x + tc.r * n.x, base.omega_y + tc.r * n.y};
}

TubularCoord signed_distance_coord(const SystemConfig& cfg, const ParamPoint& omega) {
  const Vec2 w{omega.omega_x, omega.omega_y};
  // seed from the globally nearest of 256 grid samples
  constexpr int n = 256;
  double best_d2 = 0.0, theta0 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double th = double(i) / n;
    const ParamPoint p = psi(cfg, th);
    const Vec2 d{w.x - p.omega_x, w.y - p.omega_y};
    const double d2 = dot(d, d);
    if (i == 0 || d2 < best_d2) {
      best_d2 = d2;
      theta0 = th;
    }
  }
  // Newton on h(theta) = <Omega - psi(theta), psi'(theta)> = 0
  double theta = theta0;
  bool converged = false;
  for (int it = 0; it < 50; ++it) {
    const ParamPoint p = psi(cfg, theta);
    const Vec2 d{w.x - p.omega_x, w.y - p.omega_y};
    const Vec2 t = psi_prime(cfg, theta);
    const Vec2 t2 = psi_second(cfg, theta);
    const double h = dot(d, t);
    const double hp = -dot(t, t) + dot(d, t2);
    if (std::fabs(hp) < 1e-300) break;
    const double step = -h / hp;
    theta += step;
    if (std::fabs(step) < 1e-14) {
      converged = true;
      break;
    }
  }
  if (!converged) fail(errc::no_convergence, "param_to_tubular: Newton stalled");
  const ParamPoint p = psi(cfg, theta);
  const Vec2 nrm = psi_normal(cfg, theta);
  const double r = dot(Vec2{w.x - p.omega_x, w.y - p.omega_y}, nrm);
  return {wrap01(theta), r};
}

TubularCoord param_to_tubular(const SystemConfig& cfg, const ParamPoint& omega) {
  const TubularCoord tc = signed_distance_coord(cfg, omega);
  if (!(tc.r > -1.0 / curvature_max(cfg)))
    fail(errc::degenerate, "param_to_tubular: point outside the injectivity domain");
  return tc;
}

RegionTag region_classify(const SystemConfig& cfg, const ParamPoint& omega, double tol) {
  const double r = signed_distance_coord(cfg, omega).r;
  const double e = cfg.epsilon;
  if (std::fabs(r - e) <= tol) return RegionTag::OuterBoundary;
  if (std::fabs(r + e) <= tol) return RegionTag::InnerBoundary;
  if (r > e) return RegionTag::Outside;
  if (r < -e) return RegionTag::Hole;
  return RegionTag::ResonanceInterior;
}

SectionCertificate cross_section_functional(const SystemConfig& cfg, const ParamPoint& omega) {
  if (region_classify(cfg, omega) != RegionTag::Outside)
    fail(errc::invalid_argument, "cross_section_functional requires an Outside parameter point");
  const TubularCoord tc = param_to_tubular(cfg, omega);
  const Vec2 n = psi_normal(cfg, tc.theta);

  auto fdot = [&](double x, double y) {
    return dot(n, eval_field(cfg, omega, StatePoint{x, y}));
  };

  // coarse grid, then three rounds of local grid refinement around the minimum
  constexpr int g = 256;
  double best = 0.0, bx = 0.0, by = 0.0;
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      const double v = fdot(double(i) / g, double(j) / g);
      if ((i == 0 && j == 0) || v < best) {
        best = v;
        bx = double(i) / g;
        by = double(j) / g;
      }
    }
  double half = 1.0 / g;
  for (int round = 0; round < 3; ++round) {
    constexpr int m = 16;
    double rb = best, rx = bx, ry = by;
    for (int i = -m; i <= m; ++i)
      for (int j = -m; j <= m; ++j) {
        const double x = bx + half * i / m, y = by + half * j / m;
        const double v = fdot(x, y);
        if (v < rb) {
          rb = v;
          rx = x;
          ry = y;
        }
      }
    best = rb;
    bx = rx;
    by = ry;
    half /= m;
  }
  if (!(best > 0.0))
    fail(errc::positivity_failed, "cross_section_functional: certified minimum not positive");
  return {n, best, StatePoint{bx, by}.normalised()};
}

}  // namespace torusbif
