#pragma once

#include <optional>
#include <vector>

#include "core/family.hpp"
#include "core/hamiltonian.hpp"
#include "core/ode.hpp"

namespace torusbif {

struct Trajectory {
  std::vector<double> times;
  std::vector<StatePoint> states;  // on the universal cover
  ParamPoint omega;
};

// Adaptive integration of the full family, lifted to the cover.
Trajectory integrate(const SystemConfig& cfg, const ParamPoint& omega, const StatePoint& s0,
                     double t_end, double tol = 1e-9);

enum class Stability { Attracting, Repelling };

struct InvariantCircle {
  int homotopy_x = 1;
  int homotopy_y = 0;
  std::vector<StatePoint> graph_samples;
  Stability stability = Stability::Attracting;
  int x_direction = +1;
  double y_at_section = 0.0;  // fixed point of the return map on x = 0
  double residual = 0.0;
  double multiplier = 1.0;  // return-map derivative
};

// Horizontal invariant circles found as fixed points of the first-return map
// y -> P(y) on the section x = 0, via a 128-point sweep plus bisection.
std::vector<InvariantCircle> invariant_circles(const SystemConfig& cfg, const ParamPoint& omega);

// Number of Reeb components for a parameter in the hole: the circle count
// after certifying alternating directions and no extra return-map fixed
// points on a 1024-point sweep.
int reeb_count(const SystemConfig& cfg, const ParamPoint& omega);

// Number of contractible periodic orbits of the perturbed slow flow, counted
// by sign changes of the return displacement along a ray from the centre
// (512-point sweep plus bisection).
int cpo_count(const SystemConfig& cfg, const ReducedParams& reduced);

struct TransitMapSample {
  double z;
  double Tz;
  double slope;
  double z_s;
  double z_u;
};

// Transit map of the slow flow from the section x = x_g to x = x_g + 1 in the
// coordinate z = eta^2, past the saddle near x_g + 1/2.
class TransitMap {
 public:
  // eps_terms_on toggles the order-sqrt(eps) correction in the x equation.
  TransitMap(const SystemConfig& cfg, const ReducedParams& reduced, bool eps_terms_on);

  double z_s() const { return z_s_; }
  double z_u() const { return z_u_; }
  double x_section() const { return x_g_; }
  double saddle_x() const { return saddle_.x; }
  double unstable_eigenvalue() const { return lambda_; }

  double map(double z) const;    // fails NoTransit if the orbit never crosses
  double slope(double z) const;  // central finite difference
  TransitMapSample sample(double z) const;

 private:
  Vec2 field(const Vec2& z) const;
  int classify_forward(double eta0) const;   // +1 passes the saddle, -1 falls back
  int classify_backward(double eta0) const;  // same, for the reversed flow

  SystemConfig cfg_;
  ReducedParams reduced_;
  bool eps_on_;
  double x_g_;
  Vec2 saddle_;
  double lambda_;
  double z_s_ = 0.0, z_u_ = 0.0;
};

// Local model of the gap between the saddle-node-of-periodic-orbits curve and
// the rotational-homoclinic curve. The gap is exponentially small in
// sqrt(eps) and far below double precision at the epsilons of interest, so it
// is reported in log10 from quantities measured at the perturbed saddle.
struct SnpGapModel {
  double nu;        // exponent rate, 2 pi (2 sin 2pi x_g + alpha_tilde) / lambda
  double lambda;    // unstable eigenvalue at the saddle
  double k;         // O(1) prefactor 2 eta_s
  double K1;        // z-to-energy conversion exp(2 pi x_g / C) / (C pi)
  double log10_gap_z;      // fixed-point offset at the slope-1 point
  double log10_gap_alpha;  // parameter gap in alpha_tilde at fixed rho_tilde
};

SnpGapModel snp_rhc_gap(const SystemConfig& cfg, double alpha_tilde);

struct SnpPoint {
  double rho_tilde;
  double alpha_tilde;   // direct Newton solution when found, model value otherwise
  bool found_directly;
};

// Attempts to solve {T(z) = z, T'(z) = 1} per rho_tilde sample by 2-D Newton
// in (z, alpha_tilde); the exponentially degenerate tail makes direct failure
// expected, in which case the model value is recorded.
std::vector<SnpPoint> snp_locus(const SystemConfig& cfg,
                                const std::vector<double>& rho_tilde_samples);

}  // namespace torusbif
