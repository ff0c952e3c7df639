#pragma once

#include <cstddef>
#include <functional>

#include "core/types.hpp"

namespace torusbif {

using OdeRhs = std::function<Vec2(double, const Vec2&)>;
using EventFn = std::function<double(double, const Vec2&)>;

struct OdeOptions {
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
  double h_init = 1e-3;
  double h_max = 0.1;
  std::size_t max_steps = 5'000'000;
};

// Adaptive Dormand-Prince 5(4) stepper with cubic Hermite interpolation on
// the last accepted step.
class Dopri5 {
 public:
  Dopri5(OdeRhs f, OdeOptions opt = {});

  void init(double t, const Vec2& y);
  void step();  // one accepted adaptive step

  double t() const { return t_; }
  const Vec2& y() const { return y_; }
  double t_prev() const { return tp_; }
  const Vec2& y_prev() const { return yp_; }

  // Hermite interpolant on [t_prev, t].
  Vec2 interpolate(double s) const;

 private:
  OdeRhs f_;
  OdeOptions opt_;
  double t_ = 0.0, tp_ = 0.0;
  Vec2 y_, yp_;
  Vec2 k1_, fp_;  // derivative at t_ (FSAL) and at t_prev
  double h_ = 0.0;
};

// Integrates from (t0, y0) to t1 and returns the final state.
Vec2 ode_solve(const OdeRhs& f, double t0, double t1, const Vec2& y0, const OdeOptions& opt = {});

struct EventResult {
  double t;
  Vec2 y;
};

// Integrates forward until g crosses zero in the given direction (+1 upward,
// -1 downward, 0 either), skipping any crossing before t_min; the crossing is
// refined by interpolant bisection plus Newton correction in time.
EventResult ode_solve_to_event(const OdeRhs& f, double t0, const Vec2& y0, const EventFn& g,
                               int direction, double t_min, double t_max,
                               const OdeOptions& opt = {});

}  // namespace torusbif
