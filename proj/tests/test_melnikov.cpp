#include <doctest.h>

#include <cmath>

#include "core/melnikov.hpp"
#include "core/numerics.hpp"

using namespace torusbif;

namespace {
const double C0 = std::sqrt(0.5);
const double S0 = std::sqrt(0.5);
}

TEST_CASE("closed-form constants match direct quadrature") {
  for (const double phi : {0.06, 0.125, 0.18}) {
    const double C = std::cos(kTwoPi * phi), S = std::sin(kTwoPi * phi);
    const RhcConstants cf = rhc_constants(C, S);
    const RhcConstants q = rhc_constants_quadrature(C, S);
    CHECK(cf.a == doctest::Approx(q.a).epsilon(1e-12));
    CHECK(cf.b == doctest::Approx(q.b).epsilon(1e-12));
    CHECK(cf.c == doctest::Approx(q.c).epsilon(1e-12));
  }
}

TEST_CASE("frozen constants at the canonical phase") {
  const RhcConstants r = rhc_constants(C0, S0);
  CHECK(r.a == doctest::Approx(1.9905273142915068).epsilon(1e-13));
  CHECK(r.b == doctest::Approx(-0.4056111108478251).epsilon(1e-13));
  CHECK(r.c == doctest::Approx(2.4775550575455023).epsilon(1e-13));
  CHECK(r.k == doctest::Approx(1.6252587463622645).epsilon(1e-13));
  const NPoint n = n_point(C0, S0);
  CHECK(n.alpha_tilde == doctest::Approx(-0.2881752638568445).epsilon(1e-13));
  CHECK(n.rho_tilde == 0.0);
  const KPoint k = k_point(C0, S0);
  CHECK(k.alpha_tilde == doctest::Approx(2.0 * rho_necklace(C0)).epsilon(1e-14));
  CHECK(k.rho_tilde == doctest::Approx(-0.7639999138902769).epsilon(1e-12));
}

TEST_CASE("the two lines cross at the N point") {
  const NPoint n = n_point(C0, S0);
  CHECK(rhc_rho_tilde(C0, S0, n.alpha_tilde, +1) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(rhc_rho_tilde(C0, S0, n.alpha_tilde, -1) == doctest::Approx(0.0).epsilon(1e-13));
  // inversion consistency
  for (const int branch : {+1, -1})
    for (const double rt : {-0.7, 0.2, 1.3})
      CHECK(rhc_rho_tilde(C0, S0, rhc_alpha_tilde(C0, S0, rt, branch), branch) ==
            doctest::Approx(rt).epsilon(1e-12));
}

TEST_CASE("the K point sits on both its curves") {
  const KPoint k = k_point(C0, S0);
  CHECK(rhc_rho_tilde(C0, S0, k.alpha_tilde, +1) == doctest::Approx(k.rho_tilde).epsilon(1e-12));
}

TEST_CASE("persistence value near the centre approaches the trace-zero branch") {
  // as E -> E_center the closed orbits shrink onto the centre and the
  // persistence value tends to the centre branch of the trace-zero ellipse
  const double rho = -0.3;
  const SaddleCenter sc = saddle_center(C0, rho);
  auto val = [&](double u) {
    return cpo_alpha(C0, S0, rho, sc.E_center + u * (sc.E_saddle - sc.E_center));
  };
  const double limit = richardson_limit(val, 1e-2, 6, 0.5);
  CHECK(limit == doctest::Approx(center_alpha(C0, rho)).epsilon(1e-6));
}

TEST_CASE("persistence value near the loop approaches the homoclinic value") {
  const double rho = -0.3;
  const SaddleCenter sc = saddle_center(C0, rho);
  auto val = [&](double v) {
    return cpo_alpha(C0, S0, rho, sc.E_saddle - v * (sc.E_saddle - sc.E_center));
  };
  // logarithmic approach: halving the energy defect moves the value linearly
  // in 1/log, so compare at a small fixed defect instead of extrapolating
  CHECK(val(1e-9) == doctest::Approx(chc_alpha(C0, S0, rho)).epsilon(1e-3));
}

TEST_CASE("energy derivative is negative and matches finite differences") {
  const double rho = 0.1;
  const SaddleCenter sc = saddle_center(C0, rho);
  const double dE = sc.E_saddle - sc.E_center;
  const double E = sc.E_center + 0.5 * dE;
  const double ap = cpo_alpha_prime(C0, S0, rho, E);
  CHECK(ap < 0.0);
  const double h = 1e-6 * dE;
  const double fd = (cpo_alpha(C0, S0, rho, E + h) - cpo_alpha(C0, S0, rho, E - h)) / (2.0 * h);
  CHECK(ap == doctest::Approx(fd).epsilon(1e-5));
}

TEST_CASE("line ends on the resonance boundary") {
  const std::vector<ZPoint> z = z_points(C0, S0, 0.01);
  CHECK(z.size() == 4);
  for (const ZPoint& p : z) {
    const double rho_tilde = (p.rho - rho_necklace(C0)) / std::sqrt(0.01);
    CHECK(rhc_rho_tilde(C0, S0, p.alpha_tilde, p.branch) ==
          doctest::Approx(rho_tilde).epsilon(1e-10));
  }
}

TEST_CASE("separation chain between homoclinic and neutral-saddle curves") {
  const SeparationCheck chk = chc_above_ns_check(C0, S0);
  CHECK(chk.ok);
  // at the canonical phase C = S, so the comparison shift degenerates to zero
  CHECK(std::fabs(chk.rho_t) < 1e-15);
  CHECK(std::fabs(chk.x_f) < 1e-16);
  CHECK(chk.lhs > chk.rhs);
}

TEST_CASE("density grid is finite with negative derivative everywhere") {
  const std::vector<DensityCell> cells = density_grid(C0, S0, 6, 4);
  CHECK(cells.size() == 24);
  for (const DensityCell& c : cells) {
    CHECK(std::isfinite(c.alpha_tilde));
    CHECK(c.alpha_prime < 0.0);
  }
}
