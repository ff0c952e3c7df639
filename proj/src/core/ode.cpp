#include "core/ode.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace torusbif {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

Dopri5::Dopri5(OdeRhs f, OdeOptions opt) : f_(std::move(f)), opt_(opt) {}

void Dopri5::init(double t, const Vec2& y) {
  t_ = tp_ = t;
  y_ = yp_ = y;
  k1_ = fp_ = f_(t, y);
  h_ = opt_.h_init;
}

void Dopri5::step() {
  for (std::size_t attempt = 0;; ++attempt) {
    if (attempt > 200 || h_ < 1e-14) fail(errc::step_underflow, "ode step size underflow");
    const double h = h_;
    const Vec2 k1 = k1_;
    const Vec2 k2 = f_(t_ + c2 * h, y_ + h * a21 * k1);
    const Vec2 k3 = f_(t_ + c3 * h, y_ + h * (a31 * k1 + a32 * k2));
    const Vec2 k4 = f_(t_ + c4 * h, y_ + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vec2 k5 = f_(t_ + c5 * h, y_ + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vec2 k6 = f_(t_ + h, y_ + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Vec2 ynew = y_ + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vec2 k7 = f_(t_ + h, ynew);
    const Vec2 err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double sx = opt_.abs_tol + opt_.rel_tol * std::max(std::fabs(y_.x), std::fabs(ynew.x));
    const double sy = opt_.abs_tol + opt_.rel_tol * std::max(std::fabs(y_.y), std::fabs(ynew.y));
    const double en = std::sqrt(0.5 * ((err.x / sx) * (err.x / sx) + (err.y / sy) * (err.y / sy)));

    double factor = en > 0.0 ? 0.9 * std::pow(en, -0.2) : 5.0;
    factor = std::clamp(factor, 0.2, 5.0);
    if (en <= 1.0) {
      tp_ = t_;
      yp_ = y_;
      fp_ = k1_;
      t_ += h;
      y_ = ynew;
      k1_ = k7;
      h_ = std::min(h * factor, opt_.h_max);
      return;
    }
    h_ = h * factor;
  }
}

Vec2 Dopri5::interpolate(double s) const {
  const double h = t_ - tp_;
  if (h == 0.0) return y_;
  const double u = (s - tp_) / h;
  const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
  const double h10 = u * (1.0 - u) * (1.0 - u);
  const double h01 = u * u * (3.0 - 2.0 * u);
  const double h11 = u * u * (u - 1.0);
  return h00 * yp_ + (h10 * h) * fp_ + h01 * y_ + (h11 * h) * k1_;
}

Vec2 ode_solve(const OdeRhs& f, double t0, double t1, const Vec2& y0, const OdeOptions& opt) {
  if (t1 == t0) return y0;
  OdeOptions o = opt;
  o.h_max = std::min(o.h_max, std::fabs(t1 - t0));
  Dopri5 stepper(t1 > t0 ? f : OdeRhs([&f](double t, const Vec2& y) { return -f(-t, y); }), o);
  const double sgn = t1 > t0 ? 1.0 : -1.0;
  stepper.init(sgn * t0, y0);
  const double target = sgn * t1;
  for (std::size_t n = 0; n < o.max_steps; ++n) {
    if (stepper.t() >= target) return stepper.interpolate(target);
    stepper.step();
  }
  fail(errc::no_convergence, "ode_solve: step budget exhausted");
}

EventResult ode_solve_to_event(const OdeRhs& f, double t0, const Vec2& y0, const EventFn& g,
                               int direction, double t_min, double t_max, const OdeOptions& opt) {
  Dopri5 stepper(f, opt);
  stepper.init(t0, y0);
  double g_prev = g(t0, y0);
  for (std::size_t n = 0; n < opt.max_steps; ++n) {
    if (stepper.t() >= t_max) break;
    stepper.step();
    const double g_cur = g(stepper.t(), stepper.y());
    const bool crossed = (g_prev < 0.0 && g_cur >= 0.0 && direction >= 0) ||
                         (g_prev > 0.0 && g_cur <= 0.0 && direction <= 0);
    if (crossed && stepper.t() >= t_min) {
      // bisection on the interpolant, then a Newton polish in time
      double ta = stepper.t_prev(), tb = stepper.t();
      double ga = g_prev;
      for (int it = 0; it < 100 && tb - ta > 1e-15 * std::max(1.0, std::fabs(tb)); ++it) {
        const double tm = 0.5 * (ta + tb);
        const double gm = g(tm, stepper.interpolate(tm));
        if ((gm > 0.0) == (ga > 0.0)) {
          ta = tm;
          ga = gm;
        } else {
          tb = tm;
        }
      }
      double te = 0.5 * (ta + tb);
      Vec2 ye = stepper.interpolate(te);
      for (int it = 0; it < 5; ++it) {
        const double gv = g(te, ye);
        const double dt = 1e-7;
        const Vec2 fe = f(te, ye);
        const double gdot = (g(te + dt, ye + dt * fe) - g(te - dt, ye - dt * fe)) / (2.0 * dt);
        if (std::fabs(gdot) < 1e-300) break;
        const double corr = -gv / gdot;
        te += corr;
        ye = ye + corr * fe;
        if (std::fabs(corr) < 1e-15) break;
      }
      if (te >= t_min) return {te, ye};
    }
    g_prev = g_cur;
  }
  fail(errc::no_section, "ode_solve_to_event: no crossing before t_max");
}

}  // namespace torusbif
