#pragma once

#include "core/types.hpp"

namespace torusbif {

// Scaled parameters of the slow-flow approximation: radial offset rho within
// the resonance region and alpha_tilde along it (the eps = 0 flow depends on
// rho only).
struct ReducedParams {
  double rho = 0.0;
  double alpha_tilde = 0.0;
};

// Slow-flow approximation of the dynamics near the top extremity of the
// resonance region, in scaled coordinates (x, eta):
//   x'   = 2 pi C eta
//   eta' = rho - sin 2pi x + 2 pi^2 eta^2
// It is reversible under (x, eta, t) -> (x, -eta, -t) and, on the cover,
// Hamiltonian for the symplectic form exp(-2 pi x / C) dx ^ deta.
Vec2 reduced_field(double C, double rho, const Vec2& z);

// Same flow with the next-order correction in the x equation restored.
Vec2 reduced_field_perturbed(double C, double S, double epsilon, double alpha_tilde, double rho,
                             const Vec2& z);

// g solves (2 pi / C) g - g' = 4 pi sin 2pi x; the x-dependent part of H.
double reduced_g(double C, double x);

// H(x, eta) = exp(-2 pi x / C) (C pi eta^2 + C rho / 2pi - g(x) / 4pi).
double reduced_H(double C, double rho, double x, double eta);

// Parameter value -1/sqrt(1 + C^2) where the saddle energy vanishes and the
// two homoclinic loops merge into a rotational necklace.
double rho_necklace(double C);

// Phase shift arctan(1/C) / 2pi of g.
double x_phase(double C);

struct SaddleCenter {
  double x_center;  // in (-1/4, 1/4)
  double x_saddle;  // in (1/4, 3/4)
  double E_center;
  double E_saddle;
};

// The equilibrium pair at eta = 0, sin 2pi x = rho; requires |rho| < 1.
SaddleCenter saddle_center(double C, double rho);

// A closed level set H = E around a centre, described by its turning points
// on the x-axis and the even branch function eta(x).
class EnergyOrbit {
 public:
  double C = 0.0;
  double rho = 0.0;
  double E = 0.0;
  double x_left = 0.0;
  double x_right = 0.0;
  double x_center = 0.0;  // the enclosed centre (x_cen or x_cen + 1)
  bool homoclinic = false;

  double eta_sq(double x) const;
  double eta(double x) const;
  double eta_max() const;
};

// Closed orbit of energy E in the family that limits on the homoclinic loop
// of this rho; E must lie in (E_centre, E_saddle).
EnergyOrbit level_orbit(double C, double rho, double E);

// The limiting homoclinic loop: left of the saddle for rho > rho_necklace,
// right of it for rho < rho_necklace; fails at the necklace value itself.
EnergyOrbit chc_orbit(double C, double rho);

// Closed-form necklace loop eta(x) on [x_g - 1/2, x_g + 1/2] and its peak.
double necklace_eta(double C, double x);
double necklace_amplitude(double C);

}  // namespace torusbif
