#pragma once

#include <complex>
#include <vector>

#include "core/family.hpp"
#include "core/geometry.hpp"

namespace torusbif {

enum class EqClass { Sink, Source, Saddle, Center, NeutralSaddle, SaddleNode, BogdanovTakens };

const char* eq_class_name(EqClass c);

struct Equilibrium {
  StatePoint state;
  ParamPoint omega;
  double det = 0.0;
  double tr = 0.0;
  std::complex<double> eig1, eig2;
  EqClass cls = EqClass::Saddle;
};

enum class Side { Top, Bottom };
enum class ArcKind { CenterArc, NeutralSaddleArc };
enum class BoundarySide { Inner, Outer };

struct TraceZeroArc {
  std::vector<Equilibrium> samples;
  ArcKind arc_kind;
  Side side;
};

struct BPoint {
  Equilibrium equilibrium;
  BoundarySide boundary;
  Side quadrant;
  double coeff_a = 0.0;  // Bogdanov-Takens quadratic normal-form coefficients
  double coeff_b = 0.0;
};

// Parameter point carrying an equilibrium at state s: the graph map Omega^e.
ParamPoint omega_of_state(const SystemConfig& cfg, const StatePoint& s);

// Classification bands: |det| < 1e-8 degenerate, |tr| < 1e-8 neutral.
Equilibrium classify_equilibrium(const SystemConfig& cfg, const ParamPoint& omega,
                                 const StatePoint& s);

// All equilibria for parameters omega, by Newton from a 64x64 seed grid with
// torus-metric deduplication.
std::vector<Equilibrium> find_equilibria(const SystemConfig& cfg, const ParamPoint& omega,
                                         double dedup_radius = 1e-6);

// One arc (center or neutral-saddle) of the trace-zero curve on the chosen side.
TraceZeroArc trace_zero_arc(const SystemConfig& cfg, Side side, ArcKind kind,
                            std::size_t min_samples = 512);

// The four Bogdanov-Takens parameter points, with normal-form coefficients.
std::vector<BPoint> locate_B_points(const SystemConfig& cfg);

// p D^2_x G(q,q) with p,q the left/right kernel vectors at a saddle-node.
double saddle_node_coefficient(const SystemConfig& cfg, const Equilibrium& eq);

struct LyapunovResult {
  double l1_full;
  double l1_first_order;
};

// First Lyapunov coefficient at a center on the trace-zero curve.
LyapunovResult lyapunov_l1(const SystemConfig& cfg, const Equilibrium& eq);

// Sign-invariance probe: l1 computed with an alternative linear normalisation.
double lyapunov_l1_alternative(const SystemConfig& cfg, const Equilibrium& eq);

// True iff cos(2pi phi) sin(2pi phi) > 1/4, i.e. phi in (1/24, 5/24).
bool hopf_range_condition(double phi);

}  // namespace torusbif
