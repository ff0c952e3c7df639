#pragma once

#include <cstddef>
#include <vector>

#include "core/hamiltonian.hpp"

namespace torusbif {

// Energy-balance constants for persistence of the rotational homoclinic
// loops: rho_tilde = +/- (C a alpha_tilde - b) / c to leading order.
struct RhcConstants {
  double a;
  double b;
  double c;
  double k;
};

RhcConstants rhc_constants(double C, double S);             // closed forms
RhcConstants rhc_constants_quadrature(double C, double S);  // direct integrals

// rho_tilde of the branch (+1 upper loop, -1 lower loop) at alpha_tilde.
double rhc_rho_tilde(double C, double S, double alpha_tilde, int branch);

// alpha_tilde of the branch at a given rho_tilde (the lines inverted).
double rhc_alpha_tilde(double C, double S, double rho_tilde, int branch);

// The crossing of the two rotational-homoclinic lines: rho_tilde = 0 and
// alpha_tilde = b / (C a) = -2C(C + 2S) / ((4 + 9C^2) sqrt(1 + C^2)).
struct NPoint {
  double alpha_tilde;
  double rho_tilde;
};

NPoint n_point(double C, double S);

// Trace-zero ellipse rho^2 + C^2 (alpha_tilde - rho)^2 = 1 in scaled
// parameters: saddle branch (neutral saddles) and centre branch (Hopf).
double ns_alpha(double C, double rho);
double center_alpha(double C, double rho);

// Crossing of the upper rotational-homoclinic line with the neutral-saddle
// branch, at alpha_tilde = 2 rho_necklace.
struct KPoint {
  double alpha_tilde;
  double rho_tilde;
};

KPoint k_point(double C, double S);

// Weighted orbit integrals driving the persistence of contractible loops:
//   a = (4 pi / C) int exp(-2 pi x / C) eta dx
//   b = (4 pi / C) int (f(x) + S rho) exp(-2 pi x / C) eta dx
// with f(x) = cos 2pi x + (C - S) sin 2pi x, plus their energy derivatives
//   a' = (2 / C^2) int dx / eta,   b' = (2 / C^2) int (f + S rho) dx / eta
// (derivatives are finite only strictly inside the energy range).
struct OrbitIntegrals {
  double a;
  double b;
  double a_prime;
  double b_prime;
};

OrbitIntegrals orbit_integrals(double C, double S, const EnergyOrbit& orbit,
                               bool with_derivatives);

// Persistence curve of the contractible homoclinic loop: b(rho) / (C a(rho)).
double chc_alpha(double C, double S, double rho);

// Persistence value for the closed orbit of energy E, and its E-derivative
// (b' a - b a') / (C a^2), which is negative throughout the admissible range.
double cpo_alpha(double C, double S, double rho, double E);
double cpo_alpha_prime(double C, double S, double rho, double E);

// Ends of the rotational-homoclinic lines on the resonance boundary rho = +/-1.
struct ZPoint {
  double rho;          // +1 outer boundary, -1 inner boundary
  double alpha_tilde;  // on the corresponding line, at rho_tilde = (rho - rho_0)/sqrt(eps)
  int branch;          // +1 or -1
};

std::vector<ZPoint> z_points(double C, double S, double epsilon);

struct DensityCell {
  double rho;
  double u;  // normalised energy, E = E_cen + u (E_sad - E_cen)
  double E;
  double alpha_tilde;
  double alpha_prime;
};

// Samples cpo_alpha and cpo_alpha_prime on an n_rho x n_u midpoint grid over
// rho in (-1, 1), u in (0, 1); rows are computed in parallel.
std::vector<DensityCell> density_grid(double C, double S, std::size_t n_rho, std::size_t n_u);

// Sufficient-condition chain showing the contractible-homoclinic curve stays
// strictly above the neutral-saddle curve (no crossing point between them).
struct SeparationCheck {
  double rho_t;     // below this rho the direct minimum argument fails
  double x_f;       // phase shift of the comparison function f
  double lhs;       // exp(-2 pi (2 x_f - 1/2) / C)
  double rhs;       // 2 / (pi min(l(rho_0), l(rho_t)))
  double eta_minus_bound;  // 1 / pi, bound used for the negative contribution
  bool ok;
};

SeparationCheck chc_above_ns_check(double C, double S);

}  // namespace torusbif
