#include "core/flowsim.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/geometry.hpp"
#include "core/melnikov.hpp"
#include "core/numerics.hpp"

namespace torusbif {

namespace {

constexpr double kPi = 0.5 * kTwoPi;

OdeOptions default_opts() {
  OdeOptions o;
  o.rel_tol = 1e-10;
  o.abs_tol = 1e-12;
  return o;
}

OdeOptions transit_opts() {
  OdeOptions o;
  o.rel_tol = 1e-12;
  o.abs_tol = 1e-14;
  return o;
}

struct RaceEvent {
  EventFn g;
  int direction;  // +1 upward, -1 downward, 0 either
};

struct RaceResult {
  std::size_t which;
  double t;
  Vec2 y;
};

// Runs the flow until the first triggered event; nullopt if t_max is reached.
std::optional<RaceResult> run_race(const OdeRhs& f, double t0, const Vec2& y0,
                                   const std::vector<RaceEvent>& events, double t_max,
                                   const OdeOptions& opt) {
  Dopri5 stepper(f, opt);
  stepper.init(t0, y0);
  std::vector<double> prev(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) prev[i] = events[i].g(t0, y0);
  for (std::size_t n = 0; n < opt.max_steps && stepper.t() < t_max; ++n) {
    stepper.step();
    std::optional<RaceResult> best;
    for (std::size_t i = 0; i < events.size(); ++i) {
      const double cur = events[i].g(stepper.t(), stepper.y());
      const int dir = events[i].direction;
      const bool crossed = (prev[i] < 0.0 && cur >= 0.0 && dir >= 0) ||
                           (prev[i] > 0.0 && cur <= 0.0 && dir <= 0);
      if (crossed) {
        double ta = stepper.t_prev(), tb = stepper.t(), ga = prev[i];
        for (int it = 0; it < 80 && tb - ta > 1e-14 * std::max(1.0, std::fabs(tb)); ++it) {
          const double tm = 0.5 * (ta + tb);
          const double gm = events[i].g(tm, stepper.interpolate(tm));
          if ((gm > 0.0) == (ga > 0.0)) {
            ta = tm;
            ga = gm;
          } else {
            tb = tm;
          }
        }
        const double te = 0.5 * (ta + tb);
        if (!best || te < best->t) best = RaceResult{i, te, stepper.interpolate(te)};
      }
      prev[i] = cur;
    }
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace

Trajectory integrate(const SystemConfig& cfg, const ParamPoint& omega, const StatePoint& s0,
                     double t_end, double tol) {
  if (!(t_end > 0.0) || !(tol > 0.0)) fail(errc::invalid_argument, "integrate: bad t_end or tol");
  OdeOptions opt;
  opt.rel_tol = tol;
  opt.abs_tol = tol * 1e-2;
  auto f = [&](double, const Vec2& z) { return eval_field(cfg, omega, StatePoint{z.x, z.y}); };
  Dopri5 stepper(f, opt);
  stepper.init(0.0, Vec2{s0.x, s0.y});
  Trajectory traj;
  traj.omega = omega;
  traj.times.push_back(0.0);
  traj.states.push_back(s0);
  while (stepper.t() < t_end) {
    stepper.step();
    if (stepper.t() >= t_end) {
      traj.times.push_back(t_end);
      const Vec2 y = stepper.interpolate(t_end);
      traj.states.push_back(StatePoint{y.x, y.y});
      break;
    }
    traj.times.push_back(stepper.t());
    traj.states.push_back(StatePoint{stepper.y().x, stepper.y().y});
  }
  return traj;
}

namespace {

struct ReturnSample {
  double y_lift;  // P(y) on the cover
  int direction;  // sign of the x displacement
};

// First-return map of the lifted flow through one full horizontal wind.
ReturnSample horizontal_return(const SystemConfig& cfg, const ParamPoint& omega, double y0,
                               bool backward = false) {
  auto f = [&, backward](double, const Vec2& z) {
    const Vec2 v = eval_field(cfg, omega, StatePoint{z.x, z.y});
    return backward ? -v : v;
  };
  const Vec2 start{0.0, y0};
  std::vector<RaceEvent> events{
      {[](double, const Vec2& z) { return z.x * z.x - 1.0; }, +1},
  };
  const auto res = run_race(f, 0.0, start, events, 5000.0, default_opts());
  if (!res) fail(errc::no_section, "horizontal return map: no full wind before t_max");
  return {res->y.y, res->y.x > 0.0 ? +1 : -1};
}

double wrap_half(double v) {
  double w = v - std::floor(v + 0.5);
  return w;
}

}  // namespace

std::vector<InvariantCircle> invariant_circles(const SystemConfig& cfg, const ParamPoint& omega) {
  auto disp_fwd = [&](double y) { return wrap_half(horizontal_return(cfg, omega, y).y_lift - y); };
  auto disp_bwd = [&](double y) {
    return wrap_half(horizontal_return(cfg, omega, y, true).y_lift - y);
  };

  // circles attracting in forward time leave a clean sign change of the
  // forward one-wind displacement; repelling ones attract under the reversed
  // flow, so a second sweep in backward time finds them the same way. Sign
  // changes left by the +-1/2 wrap of the displacement are discarded by the
  // residual test.
  constexpr int n = 128;
  std::vector<InvariantCircle> out;
  for (const bool backward : {false, true}) {
    auto disp = [&](double y) { return backward ? disp_bwd(y) : disp_fwd(y); };
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) d[i] = disp(double(i) / n);

    for (int i = 0; i < n; ++i) {
      const double di = d[i], dj = d[(i + 1) % n];
      if (di == 0.0 || (di > 0.0) == (dj > 0.0)) continue;
      const double a = double(i) / n, b = double(i + 1) / n;
      const double y_star = bisect(disp, a, b, 1e-12);
      if (!(std::fabs(disp(y_star)) < 1e-8)) continue;  // wrap artifact
      bool duplicate = false;
      for (const InvariantCircle& c : out)
        if (circ_dist(c.y_at_section, wrap01(y_star)) < 1e-6) duplicate = true;
      if (duplicate) continue;

      InvariantCircle circ;
      circ.y_at_section = wrap01(y_star);
      circ.residual = std::fabs(disp(y_star));
      const ReturnSample ret = horizontal_return(cfg, omega, y_star, backward);
      circ.x_direction = backward ? -ret.direction : ret.direction;
      const double h = 1e-6;
      const double deriv = (disp(y_star + h) - disp(y_star - h)) / (2.0 * h) + 1.0;
      circ.multiplier = backward ? 1.0 / deriv : deriv;
      circ.stability =
          std::fabs(circ.multiplier) < 1.0 ? Stability::Attracting : Stability::Repelling;

      // graph over x: sample the circle along one full wind (reversed time
      // stays on the circle and avoids drifting off a repelling one)
      auto f = [&](double, const Vec2& z) {
        const Vec2 v = eval_field(cfg, omega, StatePoint{z.x, z.y});
        return backward ? -v : v;
      };
      Dopri5 stepper(f, default_opts());
      stepper.init(0.0, Vec2{0.0, y_star});
      while (std::fabs(stepper.y().x) < 1.0) {
        circ.graph_samples.push_back(StatePoint{stepper.y().x, stepper.y().y}.normalised());
        stepper.step();
      }
      out.push_back(circ);
    }
  }
  std::sort(out.begin(), out.end(), [](const InvariantCircle& a, const InvariantCircle& b) {
    return a.y_at_section < b.y_at_section;
  });
  return out;
}

int reeb_count(const SystemConfig& cfg, const ParamPoint& omega) {
  if (region_classify(cfg, omega) != RegionTag::Hole)
    fail(errc::invalid_argument, "reeb_count requires a parameter in the hole");
  const std::vector<InvariantCircle> circles = invariant_circles(cfg, omega);
  if (circles.size() < 2) fail(errc::inequality_violated, "reeb_count: fewer than two circles");
  for (std::size_t i = 0; i < circles.size(); ++i)
    if (circles[i].x_direction == circles[(i + 1) % circles.size()].x_direction)
      fail(errc::inequality_violated, "reeb_count: adjacent circles share a direction");

  // certificate: a finer sweep in both time directions finds no additional
  // genuine return-map fixed points (sign changes from the +-1/2 wrap of the
  // displacement are rejected by the residual test at the bisected root)
  constexpr int m = 1024;
  std::vector<double> roots;
  for (const bool backward : {false, true}) {
    auto disp = [&](double y) {
      return wrap_half(horizontal_return(cfg, omega, y, backward).y_lift - y);
    };
    double prev = disp(0.0);
    const double first = prev;
    for (int i = 1; i <= m; ++i) {
      const double cur = i == m ? first : disp(double(i) / m);
      if ((prev > 0.0) != (cur > 0.0)) {
        const double y_star = bisect(disp, double(i - 1) / m, double(i) / m, 1e-12);
        if (std::fabs(disp(y_star)) < 1e-8) {
          bool duplicate = false;
          for (const double r : roots)
            if (circ_dist(r, wrap01(y_star)) < 1e-6) duplicate = true;
          if (!duplicate) roots.push_back(wrap01(y_star));
        }
      }
      prev = cur;
    }
  }
  if (roots.size() != circles.size())
    fail(errc::inequality_violated, "reeb_count: extra return-map fixed points on fine sweep");
  return int(circles.size());
}

namespace {

// Return displacement along the ray eta = eta_c, x > x_c of the perturbed
// slow flow; nullopt when the orbit escapes instead of looping.
std::optional<double> loop_displacement(const SystemConfig& cfg, const ReducedParams& red,
                                        const Vec2& center, double s) {
  auto f = [&](double, const Vec2& z) {
    return reduced_field_perturbed(cfg.C, cfg.S, cfg.epsilon, red.alpha_tilde, red.rho, z);
  };
  const Vec2 start{center.x + s, center.y};
  std::vector<RaceEvent> events{
      {[&](double, const Vec2& z) { return z.y - center.y; }, -1},            // back on the ray
      {[&](double, const Vec2& z) { return std::fabs(z.x - center.x) - 1.5; }, +1},  // escape
  };
  double t0 = 0.0;
  Vec2 y0 = start;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const auto res = run_race(f, t0, y0, events, t0 + 400.0, default_opts());
    if (!res || res->which == 1) return std::nullopt;
    if (res->y.x > center.x) return res->y.x - start.x;
    // crossed the ray line left of the centre: keep flowing
    t0 = res->t + 1e-9;
    y0 = res->y + 1e-9 * f(res->t, res->y);
  }
  return std::nullopt;
}

}  // namespace

int cpo_count(const SystemConfig& cfg, const ReducedParams& reduced) {
  auto f = [&](const Vec2& z) {
    return reduced_field_perturbed(cfg.C, cfg.S, cfg.epsilon, reduced.alpha_tilde, reduced.rho, z);
  };
  auto jac = [&](const Vec2& z) {
    const double se = std::sqrt(cfg.epsilon);
    return Mat2{se * kTwoPi * std::sin(kTwoPi * z.x),
                kTwoPi * cfg.C + se * 2.0 * kTwoPi * kPi * cfg.S * z.y,
                -kTwoPi * std::cos(kTwoPi * z.x), 2.0 * kTwoPi * kPi * z.y};
  };
  if (std::fabs(reduced.rho) >= 1.0) return 0;

  Vec2 center;
  try {
    center = newton2(f, jac, Vec2{std::asin(reduced.rho) / kTwoPi, 0.0});
  } catch (const Error&) {
    return 0;
  }
  if (!(jac(center).det() > 0.0)) return 0;

  double s_max = 0.45;
  try {
    const Vec2 saddle = newton2(f, jac, Vec2{0.5 - std::asin(reduced.rho) / kTwoPi, 0.0});
    s_max = std::min(s_max, saddle.x - center.x - 0.01);
  } catch (const Error&) {
  }
  if (!(s_max > 0.0)) return 0;

  constexpr int n = 512;
  auto disp = [&](double s) { return loop_displacement(cfg, reduced, center, s); };
  int count = 0;
  double prev_s = 0.0;
  std::optional<double> prev;
  for (int i = 1; i <= n; ++i) {
    const double s = s_max * double(i) / (n + 1);
    const std::optional<double> cur = disp(s);
    if (prev && cur && (*prev > 0.0) != (*cur > 0.0)) {
      bisect([&](double t) {
        const auto v = disp(t);
        return v ? *v : 1.0;
      }, prev_s, s, 1e-10);
      ++count;
    }
    prev_s = s;
    prev = cur;
  }
  return count;
}

TransitMap::TransitMap(const SystemConfig& cfg, const ReducedParams& reduced, bool eps_terms_on)
    : cfg_(cfg), reduced_(reduced), eps_on_(eps_terms_on), x_g_(x_phase(cfg.C)) {
  auto f = [&](const Vec2& z) { return field(z); };
  auto jac = [&](const Vec2& z) {
    const double se = eps_on_ ? std::sqrt(cfg_.epsilon) : 0.0;
    return Mat2{se * kTwoPi * std::sin(kTwoPi * z.x),
                kTwoPi * cfg_.C + se * 2.0 * kTwoPi * kPi * cfg_.S * z.y,
                -kTwoPi * std::cos(kTwoPi * z.x), 2.0 * kTwoPi * kPi * z.y};
  };
  saddle_ = newton2(f, jac, Vec2{0.5 - std::asin(reduced_.rho) / kTwoPi, 0.0}, 1e-13);
  const Mat2 m = jac(saddle_);
  if (!(m.det() < 0.0)) fail(errc::degenerate, "transit map: no saddle at these parameters");
  lambda_ = 0.5 * (m.trace() + std::sqrt(m.trace() * m.trace() - 4.0 * m.det()));

  auto shoot = [&](auto&& classify) {
    double lo = 0.0, hi = 1.5;
    if (classify(lo) != -1 || classify(hi) != +1)
      fail(errc::no_convergence, "transit map: shooting bracket invalid");
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      (classify(mid) == +1 ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
  };
  const double eta_s = shoot([&](double e) { return classify_forward(e); });
  const double eta_u = shoot([&](double e) { return classify_backward(e); });
  z_s_ = eta_s * eta_s;
  z_u_ = eta_u * eta_u;
}

Vec2 TransitMap::field(const Vec2& z) const {
  if (eps_on_)
    return reduced_field_perturbed(cfg_.C, cfg_.S, cfg_.epsilon, reduced_.alpha_tilde,
                                   reduced_.rho, z);
  return reduced_field(cfg_.C, reduced_.rho, z);
}

int TransitMap::classify_forward(double eta0) const {
  auto f = [&](double, const Vec2& z) { return field(z); };
  const double x_pass = saddle_.x + 0.3;
  std::vector<RaceEvent> events{
      {[&](double, const Vec2& z) { return z.x - x_pass; }, +1},
      {[&](double, const Vec2& z) { return z.y + 0.05; }, -1},
      {[&](double, const Vec2& z) { return x_g_ - 0.3 - z.x; }, +1},
  };
  const auto res = run_race(f, 0.0, Vec2{x_g_, eta0}, events, 2000.0, transit_opts());
  if (!res) fail(errc::no_convergence, "transit map: classification timed out");
  return res->which == 0 ? +1 : -1;
}

int TransitMap::classify_backward(double eta0) const {
  auto f = [&](double, const Vec2& z) { return -field(z); };
  const double x_pass = saddle_.x - 0.3;
  std::vector<RaceEvent> events{
      {[&](double, const Vec2& z) { return x_pass - z.x; }, +1},
      {[&](double, const Vec2& z) { return z.y + 0.05; }, -1},
      {[&](double, const Vec2& z) { return z.x - (x_g_ + 1.3); }, +1},
  };
  const auto res = run_race(f, 0.0, Vec2{x_g_ + 1.0, eta0}, events, 2000.0, transit_opts());
  if (!res) fail(errc::no_convergence, "transit map: classification timed out");
  return res->which == 0 ? +1 : -1;
}

double TransitMap::map(double z) const {
  if (!(z > z_s_)) fail(errc::no_transit, "transit map is defined above the stable manifold");
  auto f = [&](double, const Vec2& z2) { return field(z2); };
  std::vector<RaceEvent> events{
      {[&](double, const Vec2& z2) { return z2.x - (x_g_ + 1.0); }, +1},
      {[&](double, const Vec2& z2) { return z2.y + 0.1; }, -1},
      {[&](double, const Vec2& z2) { return x_g_ - 0.3 - z2.x; }, +1},
  };
  const auto res = run_race(f, 0.0, Vec2{x_g_, std::sqrt(z)}, events, 5000.0, transit_opts());
  if (!res || res->which != 0)
    fail(errc::no_transit, "transit map: orbit fell into the contractible region");
  return res->y.y * res->y.y;
}

double TransitMap::slope(double z) const {
  double h = 1e-7 * std::max(1.0, std::fabs(z));
  h = std::min(h, 0.25 * (z - z_s_));
  if (!(h > 0.0)) fail(errc::no_transit, "transit map slope too close to the stable manifold");
  return (map(z + h) - map(z - h)) / (2.0 * h);
}

TransitMapSample TransitMap::sample(double z) const { return {z, map(z), slope(z), z_s_, z_u_}; }

SnpGapModel snp_rhc_gap(const SystemConfig& cfg, double alpha_tilde) {
  const double rho0 = rho_necklace(cfg.C);
  const double rho_tilde = rhc_rho_tilde(cfg.C, cfg.S, alpha_tilde, +1);
  const double rho = rho0 + std::sqrt(cfg.epsilon) * rho_tilde;
  const TransitMap tm(cfg, ReducedParams{rho, alpha_tilde}, true);

  SnpGapModel g;
  g.lambda = tm.unstable_eigenvalue();
  const double xg = tm.x_section();
  g.nu = kTwoPi * (2.0 * std::sin(kTwoPi * xg) + alpha_tilde) / g.lambda;
  if (!(g.nu > 0.0)) fail(errc::degenerate, "snp gap model: non-positive exponent rate");
  g.k = 2.0 * std::sqrt(tm.z_s());
  g.K1 = std::exp(kTwoPi * xg / cfg.C) / (cfg.C * kPi);
  const double log10e = 0.4342944819032518;
  g.log10_gap_z =
      std::log10(g.k) - (kTwoPi / cfg.C) * log10e / (g.nu * std::sqrt(cfg.epsilon));
  const RhcConstants rc = rhc_constants(cfg.C, cfg.S);
  g.log10_gap_alpha =
      g.log10_gap_z - std::log10(g.K1 * std::sqrt(cfg.epsilon) * cfg.C * rc.a);
  return g;
}

std::vector<SnpPoint> snp_locus(const SystemConfig& cfg,
                                const std::vector<double>& rho_tilde_samples) {
  const double rho0 = rho_necklace(cfg.C);
  std::vector<SnpPoint> out;
  for (const double rho_tilde : rho_tilde_samples) {
    const double alpha0 = rhc_alpha_tilde(cfg.C, cfg.S, rho_tilde, +1);
    SnpPoint pt{rho_tilde, alpha0, false};

    double alpha = alpha0;
    double z = -1.0;
    bool converged = false;
    try {
      for (int it = 0; it < 8; ++it) {
        const TransitMap tm(cfg, ReducedParams{rho0 + std::sqrt(cfg.epsilon) * rho_tilde, alpha},
                            true);
        if (z <= tm.z_s()) z = tm.z_s() + 1e-8;
        const double F1 = tm.map(z) - z;
        const double F2 = tm.slope(z) - 1.0;
        if (std::fabs(F1) < 1e-12 && std::fabs(F2) < 1e-6) {
          converged = true;
          break;
        }
        const double hz = std::max(1e-9, 0.1 * (z - tm.z_s()));
        const double ha = 1e-7;
        const double slope_z = tm.slope(z);
        const double dF2dz = (tm.slope(z + hz) - tm.slope(z - hz)) / (2.0 * hz);
        const TransitMap tma(cfg,
                             ReducedParams{rho0 + std::sqrt(cfg.epsilon) * rho_tilde, alpha + ha},
                             true);
        const double za = std::max(z, tma.z_s() + 1e-10);
        const double dF1da = (tma.map(za) - za - F1) / ha;
        const double dF2da = (tma.slope(za) - 1.0 - F2) / ha;
        const Mat2 J{slope_z - 1.0, dF1da, dF2dz, dF2da};
        if (std::fabs(J.det()) < 1e-300) break;
        const Vec2 step = solve2(J, Vec2{-F1, -F2});
        z += std::clamp(step.x, -0.05, 0.05);
        alpha += std::clamp(step.y, -0.05, 0.05);
      }
    } catch (const Error&) {
      converged = false;
    }

    if (converged) {
      pt.alpha_tilde = alpha;
      pt.found_directly = true;
    } else {
      // fall back to the rotational-homoclinic line plus the modelled gap
      try {
        const SnpGapModel g = snp_rhc_gap(cfg, alpha0);
        pt.alpha_tilde = alpha0 + std::pow(10.0, std::max(g.log10_gap_alpha, -300.0));
      } catch (const Error&) {
        pt.alpha_tilde = alpha0;
      }
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace torusbif
