#include "core/equilibria.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/numerics.hpp"

namespace torusbif {

namespace {

constexpr double kDegenerateBand = 1e-8;
constexpr double kNeutralBand = 1e-8;

// The kernel direction ratio d = cos2piy/cos2pix = sin2pi(y-phi)/sin2pix at a
// saddle-node; picks the better-conditioned of the two equal expressions.
double kernel_ratio(const SystemConfig& cfg, const StatePoint& s) {
  const double c2x = std::cos(kTwoPi * s.x), s2x = std::sin(kTwoPi * s.x);
  const double c2y = std::cos(kTwoPi * s.y), s2yp = std::sin(kTwoPi * (s.y - cfg.phi));
  if (std::fabs(s2x) > std::fabs(c2x)) return s2yp / s2x;
  return c2y / c2x;
}

}  // namespace

const char* eq_class_name(EqClass c) {
  switch (c) {
    case EqClass::Sink: return "sink";
    case EqClass::Source: return "source";
    case EqClass::Saddle: return "saddle";
    case EqClass::Center: return "center";
    case EqClass::NeutralSaddle: return "neutral_saddle";
    case EqClass::SaddleNode: return "saddle_node";
    case EqClass::BogdanovTakens: return "bogdanov_takens";
  }
  return "unknown";
}

ParamPoint omega_of_state(const SystemConfig& cfg, const StatePoint& s0) {
  const StatePoint s = s0.normalised();
  return {std::cos(kTwoPi * (s.y - cfg.phi)) + cfg.epsilon * std::cos(kTwoPi * s.x),
          std::sin(kTwoPi * s.y) + cfg.epsilon * std::sin(kTwoPi * s.x)};
}

Equilibrium classify_equilibrium(const SystemConfig& cfg, const ParamPoint& omega,
                                 const StatePoint& s) {
  Equilibrium eq;
  eq.state = s.normalised();
  eq.omega = omega;
  const Mat2 jac = jacobian(cfg, eq.state);
  eq.det = jac.det();
  eq.tr = jac.trace();
  std::tie(eq.eig1, eq.eig2) = eigenvalues2(eq.tr, eq.det);
  if (std::fabs(eq.det) < kDegenerateBand) {
    eq.cls = std::fabs(eq.tr) < kNeutralBand ? EqClass::BogdanovTakens : EqClass::SaddleNode;
  } else if (eq.det < 0.0) {
    eq.cls = std::fabs(eq.tr) < kNeutralBand ? EqClass::NeutralSaddle : EqClass::Saddle;
  } else {
    if (std::fabs(eq.tr) < kNeutralBand)
      eq.cls = EqClass::Center;
    else
      eq.cls = eq.tr < 0.0 ? EqClass::Sink : EqClass::Source;
  }
  return eq;
}

std::vector<Equilibrium> find_equilibria(const SystemConfig& cfg, const ParamPoint& omega,
                                         double dedup_radius) {
  // Quick reject: Omega^e has range within the unit-ellipse annulus.
  const double reach = 2.0 + cfg.epsilon;
  if (omega.omega_x * omega.omega_x + omega.omega_y * omega.omega_y > reach * reach) return {};

  auto residual = [&](const Vec2& z) {
    const ParamPoint oe = omega_of_state(cfg, StatePoint{z.x, z.y});
    return Vec2{oe.omega_x - omega.omega_x, oe.omega_y - omega.omega_y};
  };
  auto jac = [&](const Vec2& z) {
    const Mat2 m = jacobian(cfg, StatePoint{z.x, z.y});
    // D Omega^e = -D_x G
    return Mat2{-m.a11, -m.a12, -m.a21, -m.a22};
  };

  std::vector<Equilibrium> found;
  constexpr int n = 64;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec2 z{double(i) / n, double(j) / n};
      try {
        z = newton2(residual, jac, z, 1e-12, 50);
      } catch (const Error&) {
        continue;
      }
      const StatePoint s = StatePoint{z.x, z.y}.normalised();
      const Vec2 r = residual({s.x, s.y});
      if (norm(r) > 1e-10) continue;
      bool duplicate = false;
      for (const Equilibrium& e : found) {
        if (circ_dist(e.state.x, s.x) < dedup_radius && circ_dist(e.state.y, s.y) < dedup_radius) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) found.push_back(classify_equilibrium(cfg, omega, s));
    }
  std::sort(found.begin(), found.end(),
            [](const Equilibrium& a, const Equilibrium& b) { return a.det > b.det; });
  return found;
}

TraceZeroArc trace_zero_arc(const SystemConfig& cfg, Side side, ArcKind kind,
                            std::size_t min_samples) {
  // tr = 0 on the lifted curve cos 2pi y = eps sin 2pi x, solved explicitly in x.
  const std::size_t n = 8 * min_samples;
  std::vector<int> sign(n);
  std::vector<Equilibrium> ring(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = double(i) / double(n);
    const double c2y = cfg.epsilon * std::sin(kTwoPi * x);
    double y = std::acos(c2y) / kTwoPi;  // in (0, 1/2), near 1/4
    if (side == Side::Bottom) y = 1.0 - y;
    const StatePoint s{x, y};
    ring[i] = classify_equilibrium(cfg, omega_of_state(cfg, s), s);
    sign[i] = ring[i].det > 0.0 ? +1 : -1;
  }
  const int want = kind == ArcKind::CenterArc ? +1 : -1;
  // rotate so the wanted arc is contiguous, then collect it
  std::size_t start = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (sign[i] == want && sign[(i + n - 1) % n] != want) {
      start = i;
      break;
    }
  }
  if (start == n) fail(errc::continuation_stalled, "trace_zero_arc: arc not found");
  TraceZeroArc arc{{}, kind, side};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = (start + k) % n;
    if (sign[i] != want) break;
    arc.samples.push_back(ring[i]);
  }
  if (arc.samples.size() < min_samples / 2)
    fail(errc::continuation_stalled, "trace_zero_arc: arc too short");
  return arc;
}

std::vector<BPoint> locate_B_points(const SystemConfig& cfg) {
  const double e = cfg.epsilon;
  auto trdet = [&](const Vec2& z) {
    const Mat2 m = jacobian(cfg, StatePoint{z.x, z.y});
    return Vec2{m.trace(), m.det()};
  };
  auto grad = [&](const Vec2& z) {
    const double c2x = std::cos(kTwoPi * z.x), s2x = std::sin(kTwoPi * z.x);
    const double c2y = std::cos(kTwoPi * z.y), s2y = std::sin(kTwoPi * z.y);
    const double c2yp = std::cos(kTwoPi * (z.y - cfg.phi)), s2yp = std::sin(kTwoPi * (z.y - cfg.phi));
    const double c = kTwoPi * kTwoPi;
    Mat2 m;
    m.a11 = c * e * c2x;  // d tr / dx
    m.a12 = c * s2y;      // d tr / dy
    // det = -4 pi^2 eps (s2x * c2y - c2x * s2yp)
    m.a21 = -c * e * kTwoPi * (c2x * c2y + s2x * s2yp);
    m.a22 = c * e * kTwoPi * (s2x * s2y + c2x * c2yp);
    return m;
  };

  std::vector<BPoint> out;
  for (const double xs : {0.25, 0.75})
    for (const double ys : {0.25, 0.75}) {
      Vec2 z{xs, ys};
      try {
        z = newton2(trdet, grad, z, 1e-12, 50);
      } catch (const Error&) {
        fail(errc::not_found, "locate_B_points: Newton failed from a seed");
      }
      const StatePoint s = StatePoint{z.x, z.y}.normalised();
      const ParamPoint omega = omega_of_state(cfg, s);
      BPoint bp;
      bp.equilibrium = classify_equilibrium(cfg, omega, s);
      bp.quadrant = circ_dist(s.y, 0.25) < circ_dist(s.y, 0.75) ? Side::Top : Side::Bottom;
      bp.boundary = param_to_tubular(cfg, omega).r > 0.0 ? BoundarySide::Outer : BoundarySide::Inner;

      // Jordan-basis vectors at the double-zero eigenvalue; the linearisation
      // there equals 2 pi s [[eps, d], [-eps^2/d, -eps]] with s = sin 2pi x.
      const double sv = std::sin(kTwoPi * s.x);
      const double d = kernel_ratio(cfg, s);
      const Vec2 q0{d, -e};
      const Vec2 q1 = Vec2{e, d} * (d / (kTwoPi * sv * (d * d + e * e)));
      const Vec2 p0 = Vec2{d, -e} / (d * d + e * e);
      const Vec2 p1 = Vec2{e / d, 1.0} * (kTwoPi * sv);
      const Vec2 bq0q0 = second_derivative(cfg, s, q0, q0);
      const Vec2 bq0q1 = second_derivative(cfg, s, q0, q1);
      bp.coeff_a = 0.5 * dot(p1, bq0q0);
      bp.coeff_b = dot(p0, bq0q0) + dot(p1, bq0q1);
      out.push_back(bp);
    }
  return out;
}

double saddle_node_coefficient(const SystemConfig& cfg, const Equilibrium& eq) {
  if (std::fabs(eq.det) >= kDegenerateBand || std::fabs(eq.tr) <= 1e-4)
    fail(errc::not_saddle_node, "saddle_node_coefficient: not a saddle-node equilibrium");
  const StatePoint s = eq.state;
  const Vec2 p{std::cos(kTwoPi * s.x), std::sin(kTwoPi * s.x)};
  const Vec2 q{kernel_ratio(cfg, s), -cfg.epsilon};
  return dot(p, second_derivative(cfg, s, q, q));
}

namespace {

// Computes l1 at a center from the cubic Taylor field transformed by the
// linear change x~ = T dx with rows t1, t2 = -t1 A / omega.
double l1_with_row(const SystemConfig& cfg, const Equilibrium& eq, const Vec2& t1) {
  const StatePoint s = eq.state;
  const double e = cfg.epsilon;
  const double omega = std::sqrt(eq.det);
  const Mat2 A = jacobian(cfg, s);
  const Vec2 t2 = -A.apply_left(t1) / omega;
  const double a = t1.x, b = t1.y, c = t2.x, d = t2.y;
  const double Delta = a * d - b * c;

  const double C0 = std::cos(kTwoPi * s.x), S0 = std::sin(kTwoPi * s.x);
  const double c2y = std::cos(kTwoPi * s.y), s2y = std::sin(kTwoPi * s.y);
  const double c2yp = std::cos(kTwoPi * (s.y - cfg.phi)), s2yp = std::sin(kTwoPi * (s.y - cfg.phi));
  const double pi2 = 0.5 * kTwoPi;  // pi
  const double q2 = 2.0 * pi2 * pi2;
  const double q3 = (4.0 / 3.0) * pi2 * pi2 * pi2;

  // Taylor coefficients of the field about the center: no cross terms appear.
  const double f1xx = q2 * e * C0, f1yy = q2 * c2yp;
  const double f2xx = q2 * e * S0, f2yy = q2 * s2y;
  const double f1xxx = -q3 * e * S0, f1yyy = -q3 * s2yp;
  const double f2xxx = q3 * e * C0, f2yyy = q3 * c2y;

  const double Pu = a * f1xx + b * f2xx, Pv = a * f1yy + b * f2yy;
  const double Pu3 = a * f1xxx + b * f2xxx, Pv3 = a * f1yyy + b * f2yyy;
  const double Qu = c * f1xx + d * f2xx, Qv = c * f1yy + d * f2yy;
  const double Qu3 = c * f1xxx + d * f2xxx, Qv3 = c * f1yyy + d * f2yyy;

  // u = (d xt - b yt)/Delta, v = (-c xt + a yt)/Delta
  const double au = d / Delta, bu = -b / Delta;
  const double av = -c / Delta, bv = a / Delta;

  const double Pxx = 2.0 * (Pu * au * au + Pv * av * av);
  const double Pxy = 2.0 * (Pu * au * bu + Pv * av * bv);
  const double Pyy = 2.0 * (Pu * bu * bu + Pv * bv * bv);
  const double Qxx = 2.0 * (Qu * au * au + Qv * av * av);
  const double Qxy = 2.0 * (Qu * au * bu + Qv * av * bv);
  const double Qyy = 2.0 * (Qu * bu * bu + Qv * bv * bv);
  const double Pxxx = 6.0 * (Pu3 * au * au * au + Pv3 * av * av * av);
  const double Pxyy = 6.0 * (Pu3 * au * bu * bu + Pv3 * av * bv * bv);
  const double Qxxy = 6.0 * (Qu3 * au * au * bu + Qv3 * av * av * bv);
  const double Qyyy = 6.0 * (Qu3 * bu * bu * bu + Qv3 * bv * bv * bv);

  return (Pxxx + Pxyy + Qxxy + Qyyy) / (8.0 * omega) +
         (Pxy * (Pxx + Pyy) - Qxy * (Qxx + Qyy) - Pxx * Qxx + Pyy * Qyy) / (8.0 * omega * omega);
}

}  // namespace

LyapunovResult lyapunov_l1(const SystemConfig& cfg, const Equilibrium& eq) {
  if (eq.cls != EqClass::Center) fail(errc::not_center, "lyapunov_l1 requires a center");
  const double omega = std::sqrt(eq.det);
  const double f0 = omega / kTwoPi;
  LyapunovResult r;
  r.l1_full = l1_with_row(cfg, eq, Vec2{f0, f0});
  const double C0 = std::cos(kTwoPi * eq.state.x), S0 = std::sin(kTwoPi * eq.state.x);
  const double pi = 0.5 * kTwoPi;
  r.l1_first_order = -pi * pi * cfg.epsilon *
                     (cfg.C * S0 * S0 + S0 * C0 + cfg.S * C0 * C0) /
                     (2.0 * cfg.C * cfg.C * C0 * f0 * f0 * f0);
  return r;
}

double lyapunov_l1_alternative(const SystemConfig& cfg, const Equilibrium& eq) {
  if (eq.cls != EqClass::Center) fail(errc::not_center, "lyapunov_l1 requires a center");
  const double f0 = std::sqrt(eq.det) / kTwoPi;
  return l1_with_row(cfg, eq, Vec2{f0, 0.0});
}

bool hopf_range_condition(double phi) {
  if (!(std::fabs(phi) < 0.25)) fail(errc::invalid_argument, "phi must lie in (-1/4, 1/4)");
  return std::cos(kTwoPi * phi) * std::sin(kTwoPi * phi) > 0.25;
}

}  // namespace torusbif
