#pragma once

#include "core/family.hpp"
#include "core/types.hpp"

namespace torusbif {

// Tubular coordinates about the base ellipse psi: Omega = psi(theta) + r N(theta).
struct TubularCoord {
  double theta = 0.0;  // mod 1
  double r = 0.0;      // signed normal offset, positive outward
};

enum class RegionTag { Hole, ResonanceInterior, InnerBoundary, OuterBoundary, Outside };

const char* region_tag_name(RegionTag t);

// The base ellipse psi(theta) = (cos 2pi(theta - phi), sin 2pi theta).
ParamPoint psi(const SystemConfig& cfg, double theta);
Vec2 psi_prime(const SystemConfig& cfg, double theta);
Vec2 psi_second(const SystemConfig& cfg, double theta);

// Outward unit normal of psi.
Vec2 psi_normal(const SystemConfig& cfg, double theta);

double curvature(const SystemConfig& cfg, double theta);

// Maximum curvature of psi (dense scan + golden-section refinement).
double curvature_max(const SystemConfig& cfg);

ParamPoint tubular_to_param(const SystemConfig& cfg, const TubularCoord& tc);

// Inverts the tubular map by Newton on <Omega - psi(theta), psi'(theta)> = 0,
// seeded from the nearest of 256 grid samples. Rejects r <= -1/kappa_max.
TubularCoord param_to_tubular(const SystemConfig& cfg, const ParamPoint& omega);

// Nearest-foot-point coordinates without the injectivity cutoff; used for
// classification of points deep inside the hole.
TubularCoord signed_distance_coord(const SystemConfig& cfg, const ParamPoint& omega);

RegionTag region_classify(const SystemConfig& cfg, const ParamPoint& omega, double tol = 1e-9);

struct SectionCertificate {
  Vec2 functional;       // N_psi(theta(Omega)); f(x) = <functional, x> on the cover
  double certified_min;  // grid + refined minimum of d/dt f along the flow
  StatePoint argmin;
};

// Cross-section functional for Poincare flow outside the resonance region.
SectionCertificate cross_section_functional(const SystemConfig& cfg, const ParamPoint& omega);

}  // namespace torusbif
