#include <doctest.h>

#include <cmath>
#include <random>

#include "core/error.hpp"
#include "core/family.hpp"

using namespace torusbif;

namespace {
const SystemConfig cfg = SystemConfig::make(0.01, 0.125);
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(SystemConfig::make(0.3, 0.125), Error);   // eps >= 1/kappa_max
  CHECK_THROWS_AS(SystemConfig::make(-0.01, 0.125), Error);
  CHECK_THROWS_AS(SystemConfig::make(0.01, 0.3), Error);    // |phi| >= 1/4
  CHECK(cfg.C == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(cfg.S == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
}

TEST_CASE("field values") {
  const ParamPoint om{0.3, -0.2};
  const StatePoint s{0.17, 0.62};
  const Vec2 v = eval_field(cfg, om, s);
  const double fx = om.omega_x - std::cos(kTwoPi * (s.y - cfg.phi)) -
                    cfg.epsilon * std::cos(kTwoPi * s.x);
  const double fy = om.omega_y - std::sin(kTwoPi * s.y) - cfg.epsilon * std::sin(kTwoPi * s.x);
  CHECK(v.x == doctest::Approx(fx).epsilon(1e-15));
  CHECK(v.y == doctest::Approx(fy).epsilon(1e-15));
}

TEST_CASE("jacobian matches finite differences") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const ParamPoint om{0.1, 0.4};
  for (int k = 0; k < 20; ++k) {
    const StatePoint s{uni(rng), uni(rng)};
    const Mat2 j = jacobian(cfg, s);
    const double h = 1e-6;
    const Vec2 dx = (eval_field(cfg, om, {s.x + h, s.y}) - eval_field(cfg, om, {s.x - h, s.y})) /
                    (2.0 * h);
    const Vec2 dy = (eval_field(cfg, om, {s.x, s.y + h}) - eval_field(cfg, om, {s.x, s.y - h})) /
                    (2.0 * h);
    CHECK(j.a11 == doctest::Approx(dx.x).epsilon(1e-8));
    CHECK(j.a21 == doctest::Approx(dx.y).epsilon(1e-8));
    CHECK(j.a12 == doctest::Approx(dy.x).epsilon(1e-8));
    CHECK(j.a22 == doctest::Approx(dy.y).epsilon(1e-8));
  }
}

TEST_CASE("second derivative matches directional finite differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const StatePoint s{uni(rng), uni(rng)};
    const Vec2 v{uni(rng), uni(rng)};
    const Vec2 b = second_derivative(cfg, s, v, v);
    const double h = 1e-5;
    auto jac_dir = [&](double t) {
      return jacobian(cfg, {s.x + t * v.x, s.y + t * v.y}).apply(v);
    };
    const Vec2 fd = (jac_dir(h) - jac_dir(-h)) / (2.0 * h);
    CHECK(b.x == doctest::Approx(fd.x).epsilon(1e-6));
    CHECK(b.y == doctest::Approx(fd.y).epsilon(1e-6));
  }
}

TEST_CASE("parameter derivative is the identity") {
  CHECK(monotonicity_constant(cfg) == doctest::Approx(1.0).epsilon(1e-12));
}
