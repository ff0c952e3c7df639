#include <doctest.h>

#include <cmath>

#include "core/flowsim.hpp"
#include "core/melnikov.hpp"

using namespace torusbif;

namespace {
const SystemConfig cfg = SystemConfig::make(0.01, 0.125);
}

TEST_CASE("full-family trajectories stay on the lift and advance in x") {
  const ParamPoint om{1.6, 0.3};
  const Trajectory tr = integrate(cfg, om, {0.0, 0.2}, 5.0);
  CHECK(tr.states.size() == tr.times.size());
  CHECK(tr.states.size() > 2);
  CHECK(tr.states.back().x > tr.states.front().x);
}

TEST_CASE("two alternating invariant circles in the hole") {
  for (const ParamPoint om : {ParamPoint{0.0, 0.0}, ParamPoint{0.25, 0.1}}) {
    const std::vector<InvariantCircle> circles = invariant_circles(cfg, om);
    REQUIRE(circles.size() == 2);
    CHECK(circles[0].x_direction * circles[1].x_direction == -1);
    int attracting = 0, repelling = 0;
    for (const InvariantCircle& c : circles) {
      CHECK(c.residual < 1e-8);
      CHECK(!c.graph_samples.empty());
      if (c.stability == Stability::Attracting) {
        ++attracting;
        CHECK(std::fabs(c.multiplier) < 1.0);
      } else {
        ++repelling;
        CHECK(std::fabs(c.multiplier) > 1.0);
      }
    }
    CHECK(attracting == 1);
    CHECK(repelling == 1);
    CHECK(reeb_count(cfg, om) == 2);
  }
}

TEST_CASE("contractible periodic orbit counts follow the persistence value") {
  const double rho = -0.3;
  const double lo = chc_alpha(cfg.C, cfg.S, rho);
  const double hi = center_alpha(cfg.C, rho);
  CHECK(cpo_count(cfg, {rho, 0.5 * (lo + hi)}) == 1);
  CHECK(cpo_count(cfg, {rho, hi + 0.5}) == 0);
}

TEST_CASE("unperturbed transit map is affine with the saddle slope") {
  const double rho0 = rho_necklace(cfg.C);
  const TransitMap tm(cfg, {rho0, 0.0}, false);
  const double slope_expected = std::exp(kTwoPi / cfg.C);
  CHECK(tm.z_s() == doctest::Approx(-rho0 / (0.25 * kTwoPi * kTwoPi)).epsilon(1e-8));
  CHECK(tm.z_u() == doctest::Approx(tm.z_s()).epsilon(1e-8));
  const double z1 = tm.z_s() * 1.3, z2 = tm.z_s() * 2.1;
  const TransitMapSample s1 = tm.sample(z1), s2 = tm.sample(z2);
  CHECK(s1.slope == doctest::Approx(slope_expected).epsilon(1e-5));
  CHECK(s2.slope == doctest::Approx(slope_expected).epsilon(1e-5));
  // affine: the two samples lie on one line through the fixed point
  const double K = z1 - s1.Tz / slope_expected;
  CHECK(z2 - s2.Tz / slope_expected == doctest::Approx(K).epsilon(1e-6));
}

TEST_CASE("perturbed transit map separates the fixed points") {
  const double rho0 = rho_necklace(cfg.C);
  const NPoint n = n_point(cfg.C, cfg.S);
  const TransitMap tm(cfg, {rho0, n.alpha_tilde + 0.3}, true);
  CHECK(tm.z_s() > 0.0);
  CHECK(tm.z_u() > 0.0);
  CHECK(tm.unstable_eigenvalue() > 0.0);
}

TEST_CASE("gap model is exponentially small and sharpens as eps shrinks") {
  const NPoint n = n_point(cfg.C, cfg.S);
  double prev = 0.0;
  bool first = true;
  for (const double eps : {0.02, 0.01, 0.005}) {
    const SystemConfig c = SystemConfig::make(eps, 0.125);
    const SnpGapModel g = snp_rhc_gap(c, n.alpha_tilde + 0.3);
    CHECK(g.nu > 0.0);
    CHECK(g.lambda > 0.0);
    CHECK(g.log10_gap_alpha < -8.0);
    if (!first) CHECK(g.log10_gap_alpha < prev);  // smaller eps, smaller gap
    prev = g.log10_gap_alpha;
    first = false;
  }
}

TEST_CASE("direct saddle-node search falls back to the model in the flat tail") {
  const std::vector<SnpPoint> pts = snp_locus(cfg, {-0.2, 0.3});
  CHECK(pts.size() == 2);
  for (const SnpPoint& p : pts) CHECK(std::isfinite(p.alpha_tilde));
}
