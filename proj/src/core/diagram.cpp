#include "core/diagram.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>

#include <json.hpp>

#include "core/error.hpp"
#include "core/geometry.hpp"

namespace torusbif {

namespace {

constexpr const char* kToolVersion = "1.0.0";

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

}  // namespace

ParamPoint scaled_to_omega(const SystemConfig& cfg, double alpha_tilde, double rho, bool top) {
  const double theta = 0.25 - cfg.epsilon * alpha_tilde / kTwoPi;
  const ParamPoint om = tubular_to_param(cfg, TubularCoord{theta, cfg.epsilon * rho});
  return top ? om : ParamPoint{-om.omega_x, -om.omega_y};
}

ReducedParams omega_to_scaled(const SystemConfig& cfg, const ParamPoint& omega, bool top) {
  const ParamPoint om = top ? omega : ParamPoint{-omega.omega_x, -omega.omega_y};
  const TubularCoord tc = param_to_tubular(cfg, om);
  double dtheta = tc.theta - 0.25;
  dtheta -= std::round(dtheta);
  return {tc.r / cfg.epsilon, -dtheta * kTwoPi / cfg.epsilon};
}

namespace {

LabelledCurve boundary_curve(const SystemConfig& cfg, bool outer) {
  LabelledCurve c;
  c.label = outer ? "sn_outer" : "sn_inner";
  c.anchor = "saddle-node-ellipse";
  const double r = outer ? cfg.epsilon : -cfg.epsilon;
  constexpr int n = 512;
  for (int i = 0; i <= n; ++i) {
    const double theta = double(i) / n;
    c.param1.push_back(theta);
    c.param2.push_back(r);
    c.omega.push_back(tubular_to_param(cfg, TubularCoord{theta, r}));
  }
  return c;
}

LabelledCurve arc_curve(const SystemConfig& cfg, Side side, ArcKind kind) {
  LabelledCurve c;
  const bool top = side == Side::Top;
  c.label = std::string(kind == ArcKind::CenterArc ? "hopf" : "ns") + (top ? "_top" : "_bottom");
  c.anchor = "trace-zero-arc";
  const TraceZeroArc arc = trace_zero_arc(cfg, side, kind, 256);
  for (const Equilibrium& eq : arc.samples) {
    c.param1.push_back(eq.state.x);
    c.param2.push_back(eq.state.y);
    c.omega.push_back(eq.omega);
  }
  return c;
}

LabelledCurve rhc_curve(const SystemConfig& cfg, bool top, int branch) {
  LabelledCurve c;
  c.label = std::string("rhc_") + (branch > 0 ? "plus" : "minus") + (top ? "_top" : "_bottom");
  c.anchor = "rhc-energy-balance";
  const double rho0 = rho_necklace(cfg.C);
  const double se = std::sqrt(cfg.epsilon);
  constexpr int n = 200;
  for (int i = 0; i <= n; ++i) {
    const double rho = -1.0 + 2.0 * double(i) / n;
    const double rho_tilde = (rho - rho0) / se;
    const double alpha = rhc_alpha_tilde(cfg.C, cfg.S, rho_tilde, branch);
    c.param1.push_back(rho_tilde);
    c.param2.push_back(alpha);
    c.omega.push_back(scaled_to_omega(cfg, alpha, rho, top));
  }
  return c;
}

LabelledCurve chc_curve(const SystemConfig& cfg, bool top) {
  LabelledCurve c;
  c.label = top ? "chc_top" : "chc_bottom";
  c.anchor = "chc-energy-balance";
  const double rho0 = rho_necklace(cfg.C);
  const double se = std::sqrt(cfg.epsilon);
  constexpr int half = 40;
  auto add = [&](double rho) {
    const double alpha = chc_alpha(cfg.C, cfg.S, rho);
    c.param1.push_back((rho - rho0) / se);
    c.param2.push_back(alpha);
    c.omega.push_back(scaled_to_omega(cfg, alpha, rho, top));
  };
  for (int i = 0; i <= half; ++i) add(-0.98 + (rho0 - 0.02 + 0.98) * double(i) / half);
  for (int i = 0; i <= half; ++i) add(rho0 + 0.02 + (0.98 - rho0 - 0.02) * double(i) / half);
  return c;
}

LabelledCurve snp_curve(const SystemConfig& cfg, bool top) {
  LabelledCurve c;
  c.label = top ? "snp_top" : "snp_bottom";
  c.anchor = "snp-transit-model";
  const double rho0 = rho_necklace(cfg.C);
  const double se = std::sqrt(cfg.epsilon);
  const KPoint kp = k_point(cfg.C, cfg.S);
  // right of the trace-zero curve, away from the crossing with ns
  for (int i = 0; i < 5; ++i) {
    const double alpha = n_point(cfg.C, cfg.S).alpha_tilde + 0.3 + 0.25 * i;
    double shifted = alpha;
    try {
      const SnpGapModel g = snp_rhc_gap(cfg, alpha);
      shifted = alpha + std::pow(10.0, std::max(g.log10_gap_alpha, -300.0));
    } catch (const Error&) {
    }
    const double rho_tilde = rhc_rho_tilde(cfg.C, cfg.S, shifted, +1);
    if (rho_tilde < kp.rho_tilde) continue;  // keep clear of the crossing with ns
    c.param1.push_back(rho_tilde);
    c.param2.push_back(shifted);
    c.omega.push_back(scaled_to_omega(cfg, shifted, rho0 + se * rho_tilde, top));
  }
  return c;
}

}  // namespace

DiagramBundle assemble(const SystemConfig& cfg) {
  DiagramBundle b;
  b.config = cfg;
  b.tool_version = kToolVersion;
  b.tol = 1e-9;

  b.curves.push_back(boundary_curve(cfg, false));
  b.curves.push_back(boundary_curve(cfg, true));
  for (const Side side : {Side::Top, Side::Bottom})
    for (const ArcKind kind : {ArcKind::CenterArc, ArcKind::NeutralSaddleArc})
      b.curves.push_back(arc_curve(cfg, side, kind));
  for (const bool top : {true, false}) {
    b.curves.push_back(rhc_curve(cfg, top, +1));
    b.curves.push_back(rhc_curve(cfg, top, -1));
    b.curves.push_back(chc_curve(cfg, top));
    b.curves.push_back(snp_curve(cfg, top));
  }

  const double rho0 = rho_necklace(cfg.C);
  const double se = std::sqrt(cfg.epsilon);

  for (const BPoint& bp : locate_B_points(cfg)) {
    CodimTwoPoint p;
    p.label = "B";
    p.anchor = "bt-normal-form";
    p.param1 = bp.equilibrium.state.x;
    p.param2 = bp.equilibrium.state.y;
    p.omega = bp.equilibrium.omega;
    b.points.push_back(p);
  }
  const NPoint np = n_point(cfg.C, cfg.S);
  const KPoint kp = k_point(cfg.C, cfg.S);
  double gap_alpha = 0.0;
  try {
    const SnpGapModel g = snp_rhc_gap(cfg, np.alpha_tilde + 0.5);
    gap_alpha = std::pow(10.0, std::max(g.log10_gap_alpha, -300.0));
  } catch (const Error&) {
  }
  const RhcConstants rc = rhc_constants(cfg.C, cfg.S);
  for (const bool top : {true, false}) {
    b.points.push_back({"N", "necklace-crossing", np.rho_tilde, np.alpha_tilde,
                        scaled_to_omega(cfg, np.alpha_tilde, rho0 + se * np.rho_tilde, top)});
    for (const double sgn : {+1.0, -1.0})
      b.points.push_back({"K", "rhc-ns-crossing", sgn * kp.rho_tilde, kp.alpha_tilde,
                          scaled_to_omega(cfg, kp.alpha_tilde, rho0 + se * sgn * kp.rho_tilde,
                                          top)});
    const double alpha_h = np.alpha_tilde + 0.5 * gap_alpha;
    const double rho_tilde_h = -(cfg.C * rc.a * 0.5 * gap_alpha) / rc.c;
    b.points.push_back({"H", "snp-rhc-crossing", rho_tilde_h, alpha_h,
                        scaled_to_omega(cfg, alpha_h, rho0 + se * rho_tilde_h, top)});
    for (const ZPoint& z : z_points(cfg.C, cfg.S, cfg.epsilon))
      b.points.push_back({"Z", "rhc-boundary-end", (z.rho - rho0) / se, z.alpha_tilde,
                          scaled_to_omega(cfg, z.alpha_tilde, z.rho, top)});
  }
  return b;
}

bool ChecklistReport::all_passed() const {
  for (const ChecklistEntry& e : entries)
    if (!e.passed) return false;
  return true;
}

const char* check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Verified: return "Verified";
    case CheckStatus::NumericEvidence: return "NumericEvidence";
    case CheckStatus::Skipped: return "Skipped";
  }
  return "unknown";
}

namespace {

ChecklistEntry run_check(const std::string& id, CheckStatus status,
                         const std::function<std::pair<bool, std::string>()>& body) {
  ChecklistEntry e;
  e.id = id;
  e.status = status;
  try {
    const auto [ok, evidence] = body();
    e.passed = ok;
    e.evidence = evidence;
  } catch (const Error& err) {
    e.passed = false;
    e.evidence = std::string("error: ") + errc_name(err.code()) + ": " + err.what();
  }
  return e;
}

}  // namespace

ChecklistReport checklist(const SystemConfig& cfg, std::uint64_t seed) {
  ChecklistReport rep;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  // assumption 1: at most two equilibria, counts per parameter region
  rep.entries.push_back(run_check("1", CheckStatus::Verified, [&] {
    int bad = 0, done_int = 0, done_hole = 0, done_out = 0, done_bnd = 0;
    constexpr int per_region = 30;
    while (done_int < per_region || done_bnd < per_region) {
      const double theta = uni(rng);
      if (done_int < per_region) {
        const double r = (2.0 * uni(rng) - 1.0) * 0.9 * cfg.epsilon;
        const auto eqs = find_equilibria(cfg, tubular_to_param(cfg, {theta, r}));
        if (eqs.size() != 2) ++bad;
        ++done_int;
      }
      if (done_bnd < per_region) {
        const double r = uni(rng) < 0.5 ? cfg.epsilon : -cfg.epsilon;
        const auto eqs = find_equilibria(cfg, tubular_to_param(cfg, {theta, r}), 1e-4);
        if (eqs.size() != 1) ++bad;
        ++done_bnd;
      }
    }
    while (done_hole < per_region || done_out < per_region) {
      const ParamPoint om{4.0 * uni(rng) - 2.0, 4.0 * uni(rng) - 2.0};
      const RegionTag tag = region_classify(cfg, om);
      if (tag == RegionTag::Hole && done_hole < per_region) {
        if (!find_equilibria(cfg, om).empty()) ++bad;
        ++done_hole;
      } else if (tag == RegionTag::Outside && done_out < per_region) {
        if (!find_equilibria(cfg, om).empty()) ++bad;
        ++done_out;
      }
    }
    return std::pair{bad == 0, fmt("violations=%g over 4x%g samples", bad, 30)};
  }));

  // assumption 2: exactly four Bogdanov-Takens points
  rep.entries.push_back(run_check("2", CheckStatus::Verified, [&] {
    const auto bps = locate_B_points(cfg);
    bool nondeg = true;
    for (const BPoint& bp : bps)
      if (bp.coeff_a == 0.0 || bp.coeff_b == 0.0) nondeg = false;
    return std::pair{bps.size() == 4 && nondeg, fmt("count=%g nondegenerate=%g",
                                                    double(bps.size()), double(nondeg))};
  }));

  // assumption 3a: each trace-zero loop splits into a Hopf arc and an ns arc
  rep.entries.push_back(run_check("3a", CheckStatus::Verified, [&] {
    std::size_t n = 0;
    for (const Side s : {Side::Top, Side::Bottom})
      for (const ArcKind k : {ArcKind::CenterArc, ArcKind::NeutralSaddleArc})
        n += trace_zero_arc(cfg, s, k, 256).samples.empty() ? 0 : 1;
    return std::pair{n == 4, fmt("nonempty_arcs=%g of 4", double(n))};
  }));

  // assumption 3b: nondegenerate Hopf along the centre arcs (l1 sign definite)
  rep.entries.push_back(run_check("3b", CheckStatus::Verified, [&] {
    const auto top = trace_zero_arc(cfg, Side::Top, ArcKind::CenterArc, 256);
    const auto bot = trace_zero_arc(cfg, Side::Bottom, ArcKind::CenterArc, 256);
    const double l1_top = lyapunov_l1(cfg, top.samples[top.samples.size() / 2]).l1_full;
    const double l1_bot = lyapunov_l1(cfg, bot.samples[bot.samples.size() / 2]).l1_full;
    return std::pair{l1_top < 0.0 && l1_bot > 0.0,
                     fmt("l1_top=%.6g l1_bottom=%.6g", l1_top, l1_bot)};
  }));

  // assumptions 4a/4b: two Reeb components in the hole, no extra annulus
  const ParamPoint hole_pts[] = {{0.0, 0.0}, {0.25, 0.1}, {-0.2, -0.15}};
  rep.entries.push_back(run_check("4a", CheckStatus::Verified, [&] {
    for (const ParamPoint& om : hole_pts)
      if (reeb_count(cfg, om) != 2) return std::pair{false, std::string("count != 2")};
    return std::pair{true, std::string("reeb_count=2 at 3 hole points")};
  }));
  rep.entries.push_back(run_check("4b", CheckStatus::Verified, [&] {
    // reeb_count already certifies the fine-sweep fixed-point count
    for (const ParamPoint& om : hole_pts) (void)reeb_count(cfg, om);
    return std::pair{true, std::string("1024-point sweeps show no extra fixed points")};
  }));

  // assumption 4c: no Reeb component outside the resonance region
  rep.entries.push_back(run_check("4c", CheckStatus::Verified, [&] {
    const ParamPoint outside_pts[] = {{1.6, 0.3}, {-1.6, -0.3}, {1.7, -0.1}};
    for (const ParamPoint& om : outside_pts) {
      const auto circles = invariant_circles(cfg, om);
      if (circles.size() != 2 || circles[0].x_direction != circles[1].x_direction)
        return std::pair{false, std::string("direction pattern violated")};
      (void)cross_section_functional(cfg, om);
    }
    return std::pair{true,
                     std::string("same-direction circle pairs and positive cross-sections")};
  }));

  // assumptions 5a/5b: four Z points per boundary-curve/extremity structure
  rep.entries.push_back(run_check("5a", CheckStatus::Verified, [&] {
    const auto zs = z_points(cfg.C, cfg.S, cfg.epsilon);
    int inner = 0, outer = 0;
    for (const ZPoint& z : zs) (z.rho < 0.0 ? inner : outer)++;
    return std::pair{zs.size() == 4 && inner == 2 && outer == 2,
                     fmt("per_extremity=%g inner=%g outer=%g", double(zs.size()), double(inner),
                         double(outer))};
  }));
  rep.entries.push_back(run_check("5b", CheckStatus::Verified, [&] {
    const auto zs = z_points(cfg.C, cfg.S, cfg.epsilon);
    int inner = 0;
    for (const ZPoint& z : zs)
      if (z.rho < 0.0) ++inner;
    return std::pair{inner == 2, fmt("inner-boundary crossings per extremity=%g", double(inner))};
  }));

  // assumption 5c: exactly two rotational-homoclinic curves per extremity
  rep.entries.push_back(run_check("5c", CheckStatus::Verified, [&] {
    const RhcConstants rc = rhc_constants(cfg.C, cfg.S);
    return std::pair{rc.a > 0.0 && rc.c > 0.0,
                     fmt("distinct slopes +-%.6g", cfg.C * rc.a / rc.c)};
  }));

  // assumption 6: a unique N point per extremity, inside the trace-zero loop
  rep.entries.push_back(run_check("6", CheckStatus::Verified, [&] {
    const NPoint np = n_point(cfg.C, cfg.S);
    const double rho0 = rho_necklace(cfg.C);
    const double q = rho0 * rho0 +
                     cfg.C * cfg.C * (np.alpha_tilde - rho0) * (np.alpha_tilde - rho0);
    return std::pair{q < 1.0, fmt("alpha=%.9g ellipse_value=%.6g", np.alpha_tilde, q)};
  }));

  // assumption 7a: no J point, the chc curve stays above the ns curve
  rep.entries.push_back(run_check("7a", CheckStatus::Verified, [&] {
    const double rho0 = rho_necklace(cfg.C);
    double min_gap = 1e300;
    for (int i = 0; i <= 40; ++i) {
      const double t = double(i) / 40;
      for (const double rho : {rho0 + 0.03 + (0.95 - rho0 - 0.03) * t,
                               -0.95 + (rho0 - 0.03 + 0.95) * t}) {
        const double gap = chc_alpha(cfg.C, cfg.S, rho) - ns_alpha(cfg.C, rho);
        min_gap = std::min(min_gap, gap);
      }
    }
    const SeparationCheck sep = chc_above_ns_check(cfg.C, cfg.S);
    return std::pair{min_gap > 0.0 && sep.ok,
                     fmt("min_gap=%.6g analytic_bound_ok=%g", min_gap, double(sep.ok))};
  }));

  // assumption 7b: exactly one contractible periodic orbit in the wedge
  rep.entries.push_back(run_check("7b", CheckStatus::NumericEvidence, [&] {
    const double mid = 0.5 * (chc_alpha(cfg.C, cfg.S, 0.0) + center_alpha(cfg.C, 0.0));
    const int inside = cpo_count(cfg, ReducedParams{0.0, mid});
    const int above = cpo_count(cfg, ReducedParams{0.0, center_alpha(cfg.C, 0.0) + 0.3});
    double max_ap = -1e300;
    for (const DensityCell& cell : density_grid(cfg.C, cfg.S, 24, 16))
      max_ap = std::max(max_ap, cell.alpha_prime);
    return std::pair{inside == 1 && above == 0 && max_ap < 0.0,
                     fmt("cpo_inside=%g cpo_above=%g max_alpha_prime=%.6g", double(inside),
                         double(above), max_ap)};
  }));

  // assumption 8: two K points per extremity, transversal
  rep.entries.push_back(run_check("8", CheckStatus::Verified, [&] {
    const KPoint kp = k_point(cfg.C, cfg.S);
    const RhcConstants rc = rhc_constants(cfg.C, cfg.S);
    const double ns_slope = -cfg.S * cfg.S / (cfg.C * cfg.C);
    const double rhc_slope = rc.c / (cfg.C * rc.a);  // d alpha / d rho_tilde inverse scale
    return std::pair{kp.rho_tilde < 0.0 && std::fabs(ns_slope - rhc_slope) > 1e-6,
                     fmt("rho_tilde=%.9g ns_slope=%.6g", kp.rho_tilde, ns_slope)};
  }));

  // assumption 9: at most two H points, one per extremity, exponentially
  // close to the rotational-homoclinic curve
  rep.entries.push_back(run_check("9", CheckStatus::Verified, [&] {
    const NPoint np = n_point(cfg.C, cfg.S);
    const SnpGapModel g = snp_rhc_gap(cfg, np.alpha_tilde + 0.5);
    return std::pair{g.log10_gap_alpha < -8.0,
                     fmt("log10_gap_alpha=%.4g nu=%.4g", g.log10_gap_alpha, g.nu)};
  }));

  return rep;
}

std::string bundle_to_csv(const DiagramBundle& bundle) {
  std::string out = "label,param1,param2,omega_x,omega_y\r\n";
  auto row = [&](const std::string& label, double p1, double p2, const ParamPoint& om) {
    out += label + "," + num17(p1) + "," + num17(p2) + "," + num17(om.omega_x) + "," +
           num17(om.omega_y) + "\r\n";
  };
  for (const LabelledCurve& c : bundle.curves)
    for (std::size_t i = 0; i < c.omega.size(); ++i) row(c.label, c.param1[i], c.param2[i], c.omega[i]);
  for (const CodimTwoPoint& p : bundle.points) row(p.label, p.param1, p.param2, p.omega);
  return out;
}

std::string bundle_to_json(const DiagramBundle& bundle) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["config"] = {{"epsilon", bundle.config.epsilon},
                 {"phi", bundle.config.phi},
                 {"C", bundle.config.C},
                 {"S", bundle.config.S}};
  j["curves"] = nlohmann::ordered_json::array();
  for (const LabelledCurve& c : bundle.curves) {
    nlohmann::ordered_json jc;
    jc["label"] = c.label;
    jc["anchor"] = c.anchor;
    jc["param1"] = c.param1;
    jc["param2"] = c.param2;
    auto& jo = jc["omega"] = nlohmann::ordered_json::array();
    for (const ParamPoint& om : c.omega) jo.push_back({om.omega_x, om.omega_y});
    j["curves"].push_back(jc);
  }
  j["points"] = nlohmann::ordered_json::array();
  for (const CodimTwoPoint& p : bundle.points)
    j["points"].push_back({{"label", p.label},
                           {"anchor", p.anchor},
                           {"param1", p.param1},
                           {"param2", p.param2},
                           {"omega", {p.omega.omega_x, p.omega.omega_y}}});
  j["metadata"] = {{"tool_version", bundle.tool_version},
                   {"tolerance", bundle.tol},
                   {"seed", bundle.seed}};
  return j.dump(2) + "\n";
}

namespace {

const char* curve_colour(const std::string& label) {
  if (label.rfind("sn_", 0) == 0) return "#202020";
  if (label.rfind("hopf", 0) == 0) return "#c02020";
  if (label.rfind("ns", 0) == 0) return "#2040c0";
  if (label.rfind("rhc", 0) == 0) return "#108040";
  if (label.rfind("chc", 0) == 0) return "#c08010";
  if (label.rfind("snp", 0) == 0) return "#8020a0";
  return "#606060";
}

}  // namespace

std::string bundle_to_svg(const DiagramBundle& bundle) {
  const double scale = 160.0, cx = 400.0, cy = 400.0;
  auto X = [&](double wx) { return cx + scale * wx; };
  auto Y = [&](double wy) { return cy - scale * wy; };

  std::string s =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" "
      "viewBox=\"0 0 800 800\">\n"
      "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  for (const LabelledCurve& c : bundle.curves) {
    s += std::string("<polyline fill=\"none\" stroke=\"") + curve_colour(c.label) +
         "\" stroke-width=\"1.2\" points=\"";
    for (const ParamPoint& om : c.omega)
      s += fmt("%.3f,%.3f ", X(om.omega_x), Y(om.omega_y));
    s += "\"/>\n";
  }
  for (const CodimTwoPoint& p : bundle.points) {
    const double x = X(p.omega.omega_x), y = Y(p.omega.omega_y);
    if (p.label == "B")
      s += fmt("<circle cx=\"%.3f\" cy=\"%.3f\" r=\"4\" fill=\"black\"/>\n", x, y);
    else if (p.label == "Z")
      s += fmt("<rect x=\"%.3f\" y=\"%.3f\" width=\"6\" height=\"6\" fill=\"#2040c0\"/>\n",
               x - 3.0, y - 3.0);
    else if (p.label == "N")
      s += fmt("<path d=\"M %.3f %.3f l 5 5 l -5 5 l -5 -5 z\" fill=\"#108040\"/>\n", x, y - 5.0);
    else if (p.label == "K")
      s += fmt("<path d=\"M %.3f %.3f l 8 8 m -8 0 l 8 -8\" stroke=\"#c02020\" "
               "stroke-width=\"2\" fill=\"none\"/>\n",
               x - 4.0, y - 4.0);
    else
      s += fmt("<path d=\"M %.3f %.3f l 5 9 l -10 0 z\" fill=\"#8020a0\"/>\n", x, y - 6.0);
    s += fmt("<text x=\"%.3f\" y=\"%.3f\" font-family=\"monospace\" font-size=\"11\">", x + 6.0,
             y - 4.0) +
         p.label + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string checklist_to_json(const ChecklistReport& report) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["seed"] = report.seed;
  j["all_passed"] = report.all_passed();
  j["entries"] = nlohmann::ordered_json::array();
  for (const ChecklistEntry& e : report.entries)
    j["entries"].push_back({{"id", e.id},
                            {"status", check_status_name(e.status)},
                            {"passed", e.passed},
                            {"evidence", e.evidence}});
  return j.dump(2) + "\n";
}

std::string density_to_csv(const std::vector<DensityCell>& cells) {
  std::string out = "rho,u,E,alpha_tilde,alpha_prime\r\n";
  for (const DensityCell& c : cells)
    out += num17(c.rho) + "," + num17(c.u) + "," + num17(c.E) + "," + num17(c.alpha_tilde) + "," +
           num17(c.alpha_prime) + "\r\n";
  return out;
}

std::string density_to_svg(const std::vector<DensityCell>& cells, std::size_t n_rho,
                           std::size_t n_u) {
  if (cells.size() != n_rho * n_u) fail(errc::invalid_argument, "density_to_svg: size mismatch");
  double max_abs = 0.0;
  for (const DensityCell& c : cells) max_abs = std::max(max_abs, std::fabs(c.alpha_prime));
  if (max_abs == 0.0) max_abs = 1.0;

  const double w = 700.0 / double(n_rho), h = 500.0 / double(n_u);
  std::string s =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"600\" "
      "viewBox=\"0 0 800 600\">\n"
      "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < n_rho; ++i)
    for (std::size_t j = 0; j < n_u; ++j) {
      const DensityCell& c = cells[i * n_u + j];
      // diverging scale centred at zero: blue negative, red positive
      const double v = c.alpha_prime / max_abs;
      const int r = int(255.0 * (v > 0.0 ? 1.0 : 1.0 + v));
      const int g = int(255.0 * (1.0 - std::fabs(v)));
      const int bch = int(255.0 * (v < 0.0 ? 1.0 : 1.0 - v));
      s += fmt("<rect x=\"%.2f\" y=\"%.2f\" ", 60.0 + w * double(i),
               550.0 - h * double(j + 1));
      s += fmt("width=\"%.2f\" height=\"%.2f\" ", w + 0.5, h + 0.5);
      char col[32];
      std::snprintf(col, sizeof col, "#%02x%02x%02x", r, g, bch);
      s += std::string("fill=\"") + col + "\"/>\n";
    }
  s += "<text x=\"380\" y=\"585\" font-family=\"monospace\" font-size=\"14\">rho</text>\n";
  s += "<text x=\"15\" y=\"300\" font-family=\"monospace\" font-size=\"14\">u</text>\n";
  s += fmt("<text x=\"60\" y=\"30\" font-family=\"monospace\" font-size=\"14\">max|alpha'|="
           "%.6g</text>\n",
           max_abs);
  s += "</svg>\n";
  return s;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_error, "cannot open for writing: " + path);
  out << content;
  if (!out) fail(errc::io_error, "write failed: " + path);
}

}  // namespace torusbif
