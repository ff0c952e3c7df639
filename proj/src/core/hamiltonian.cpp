#include "core/hamiltonian.hpp"

#include <cmath>

#include "core/error.hpp"
#include "core/numerics.hpp"

namespace torusbif {

Vec2 reduced_field(double C, double rho, const Vec2& z) {
  const double pi = 0.5 * kTwoPi;
  return {kTwoPi * C * z.y, rho - std::sin(kTwoPi * z.x) + 2.0 * pi * pi * z.y * z.y};
}

Vec2 reduced_field_perturbed(double C, double S, double epsilon, double alpha_tilde, double rho,
                             const Vec2& z) {
  const double pi = 0.5 * kTwoPi;
  const double se = std::sqrt(epsilon);
  return {kTwoPi * C * z.y +
              se * (C * alpha_tilde - std::cos(kTwoPi * z.x) + 2.0 * pi * pi * S * z.y * z.y),
          rho - std::sin(kTwoPi * z.x) + 2.0 * pi * pi * z.y * z.y};
}

double reduced_g(double C, double x) {
  return (2.0 * C / (C * C + 1.0)) * (C * std::cos(kTwoPi * x) + std::sin(kTwoPi * x));
}

double reduced_H(double C, double rho, double x, double eta) {
  const double pi = 0.5 * kTwoPi;
  return std::exp(-kTwoPi * x / C) *
         (C * pi * eta * eta + C * rho / kTwoPi - reduced_g(C, x) / (2.0 * kTwoPi));
}

double rho_necklace(double C) { return -1.0 / std::sqrt(1.0 + C * C); }

double x_phase(double C) { return std::atan(1.0 / C) / kTwoPi; }

SaddleCenter saddle_center(double C, double rho) {
  if (!(std::fabs(rho) < 1.0)) fail(errc::no_equilibria, "saddle_center requires |rho| < 1");
  SaddleCenter sc;
  sc.x_center = std::asin(rho) / kTwoPi;
  sc.x_saddle = 0.5 - sc.x_center;
  sc.E_center = reduced_H(C, rho, sc.x_center, 0.0);
  sc.E_saddle = reduced_H(C, rho, sc.x_saddle, 0.0);
  return sc;
}

double EnergyOrbit::eta_sq(double x) const {
  const double pi = 0.5 * kTwoPi;
  const double z = std::exp(kTwoPi * x / C) * (E - reduced_H(C, rho, x, 0.0)) / (C * pi);
  return z > 0.0 ? z : 0.0;
}

double EnergyOrbit::eta(double x) const { return std::sqrt(eta_sq(x)); }

double EnergyOrbit::eta_max() const {
  const double x = golden_max([&](double t) { return eta_sq(t); }, x_left, x_right, 1e-13);
  return eta(x);
}

namespace {

EnergyOrbit build_orbit(double C, double rho, double E, bool homoclinic) {
  const SaddleCenter sc = saddle_center(C, rho);
  const bool left_loop = rho >= rho_necklace(C);

  EnergyOrbit orb;
  orb.C = C;
  orb.rho = rho;
  orb.E = E;
  orb.homoclinic = homoclinic;
  orb.x_center = left_loop ? sc.x_center : sc.x_center + 1.0;

  const double E_cen = reduced_H(C, rho, orb.x_center, 0.0);
  if (!(E > E_cen) || (!homoclinic && !(E < sc.E_saddle)))
    fail(errc::energy_out_of_range, "level energy must lie between centre and saddle energies");

  auto h = [&](double x) { return reduced_H(C, rho, x, 0.0) - E; };
  if (left_loop) {
    orb.x_left = bisect(h, sc.x_saddle - 1.0, orb.x_center);
    orb.x_right = homoclinic ? sc.x_saddle : bisect(h, orb.x_center, sc.x_saddle);
  } else {
    orb.x_left = homoclinic ? sc.x_saddle : bisect(h, sc.x_saddle, orb.x_center);
    orb.x_right = bisect(h, orb.x_center, sc.x_saddle + 1.0);
  }
  // polish the simple-root turning points to machine precision and nudge them
  // strictly inside the level set by whole ulps, so eta > 0 on the open
  // interval (1/eta integrands must stay finite) without leaving a boundary
  // layer that quadrature would have to resolve
  auto hprime = [&](double x) {
    return -std::exp(-kTwoPi * x / C) * (rho - std::sin(kTwoPi * x));
  };
  auto polish = [&](double x, double toward) {
    for (int i = 0; i < 3; ++i) {
      const double d = hprime(x);
      if (d == 0.0) break;
      const double step = h(x) / d;
      // only polish within the bisection resolution; larger steps mean the
      // root is nearly double and Newton could jump past the saddle
      if (!(std::fabs(step) < 1e-12)) break;
      x -= step;
    }
    for (int i = 0; i < 1000 && orb.eta_sq(x) <= 0.0; ++i) x = std::nextafter(x, toward);
    return x;
  };
  if (!homoclinic || left_loop) orb.x_left = polish(orb.x_left, orb.x_center);
  if (!homoclinic || !left_loop) orb.x_right = polish(orb.x_right, orb.x_center);
  return orb;
}

}  // namespace

EnergyOrbit level_orbit(double C, double rho, double E) { return build_orbit(C, rho, E, false); }

EnergyOrbit chc_orbit(double C, double rho) {
  const SaddleCenter sc = saddle_center(C, rho);
  if (std::fabs(rho - rho_necklace(C)) < 1e-12)
    fail(errc::at_necklace, "chc_orbit: homoclinic loops merge into the necklace at this rho");
  return build_orbit(C, rho, sc.E_saddle, true);
}

double necklace_eta(double C, double x) {
  const double pi = 0.5 * kTwoPi;
  return (std::pow(1.0 + C * C, -0.25) / pi) * std::cos(pi * (x - x_phase(C)));
}

double necklace_amplitude(double C) {
  const double pi = 0.5 * kTwoPi;
  return std::pow(1.0 + C * C, -0.25) / pi;
}

}  // namespace torusbif
