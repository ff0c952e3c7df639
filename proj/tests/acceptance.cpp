// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "core/diagram.hpp"
#include "core/error.hpp"
#include "core/flowsim.hpp"
#include "core/melnikov.hpp"
#include "core/numerics.hpp"

using namespace torusbif;

namespace {

int failures = 0;

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

void run(int id, double time_limit_s, const std::function<std::pair<bool, std::string>()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    const auto [pass, d] = body();
    ok = pass;
    detail = d;
  } catch (const Error& e) {
    detail = std::string("error: ") + errc_name(e.code()) + ": " + e.what();
  } catch (const std::exception& e) {
    detail = std::string("error: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > time_limit_s) {
    ok = false;
    detail += fmt(" [over time budget %.0fs]", time_limit_s);
  }
  std::printf("criterion %2d: %s  (%.1fs)  %s\n", id, ok ? "PASS" : "FAIL", secs,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

constexpr double kPi = 0.5 * kTwoPi;

// Extrapolates g(s) to s = 0 on a geometric ladder; convergence is often in
// sqrt of the natural parameter, so callers pass s = sqrt(h).
double limit_in(const std::function<double(double)>& g, const std::vector<double>& s) {
  std::vector<double> ys;
  for (const double v : s) ys.push_back(g(v));
  return extrapolate_to_zero(s, ys);
}

double loop_weight_integral(double C, double S, const EnergyOrbit& orb, double x_ref) {
  auto f = [&](double x) {
    return std::cos(kTwoPi * x) + (C - S) * std::sin(kTwoPi * x);
  };
  const double m = 0.5 * (orb.x_left + orb.x_right);
  const double R = 0.5 * (orb.x_right - orb.x_left);
  return integrate([&](double t) {
    const double x = m + R * std::sin(t);
    return (f(x) - f(x_ref)) * std::exp(-kTwoPi * x / C) * orb.eta(x) * R * std::cos(t);
  }, -0.5 * kPi, 0.5 * kPi);
}

}  // namespace

int main() {
  const SystemConfig cfg = SystemConfig::make(0.01, 0.125);
  const double C = cfg.C, S = cfg.S;
  const double rho0 = rho_necklace(C);

  // 1. closed-form energy-balance constants against direct quadrature
  run(1, 5.0, [&] {
    double worst = 0.0;
    for (const double phi : {0.06, 0.125, 0.18}) {
      const double Cp = std::cos(kTwoPi * phi), Sp = std::sin(kTwoPi * phi);
      const RhcConstants cf = rhc_constants(Cp, Sp);
      const RhcConstants q = rhc_constants_quadrature(Cp, Sp);
      worst = std::max({worst, std::fabs(q.a - cf.a) / std::fabs(cf.a),
                        std::fabs(q.b - cf.b) / std::fabs(cf.b),
                        std::fabs(q.c - cf.c) / std::fabs(cf.c)});
    }
    return std::pair{worst < 1e-8, fmt("max_rel_diff=%.3g over 3 phases", worst)};
  });

  // 2. crossing point of the two rotational-homoclinic lines
  run(2, 1.0, [&] {
    const NPoint np = n_point(C, S);
    const double frozen = -0.2881752638568445;  // high-precision closed-form value
    const double ellipse = rho0 * rho0 + C * C * (np.alpha_tilde - rho0) * (np.alpha_tilde - rho0);
    const bool ok = std::fabs(np.alpha_tilde - frozen) < 1e-6 && ellipse < 1.0;
    return std::pair{ok, fmt("alpha=%.16g ellipse_value=%.6g", np.alpha_tilde, ellipse)};
  });

  // 3. the necklace loop is a level set of H at rho_0
  run(3, 1.0, [&] {
    const double xg = x_phase(C);
    const double E_sad = saddle_center(C, rho0).E_saddle;
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double x = xg - 0.5 + double(i) / 1000.0;
      worst = std::max(worst, std::fabs(reduced_H(C, rho0, x, necklace_eta(C, x)) - E_sad));
    }
    return std::pair{worst < 1e-10, fmt("max_level_defect=%.3g over 1001 samples", worst)};
  });

  // 4. limits of the contractible-homoclinic curve
  run(4, 30.0, [&] {
    const std::vector<double> s{0.2, 0.1, 0.05, 0.025};  // offsets enter as s^2
    const double at_p1 = limit_in([&](double v) { return chc_alpha(C, S, 1.0 - v * v); }, s);
    const double at_m1 = limit_in([&](double v) { return chc_alpha(C, S, -1.0 + v * v); }, s);
    const double alpha_n = n_point(C, S).alpha_tilde;
    // approach to the necklace value goes like h log h: extrapolate linearly
    // from directly evaluable small offsets
    const std::vector<double> hs{1e-5, 1e-6, 1e-7};
    auto lim_lin = [&](double sign) {
      std::vector<double> ys;
      for (const double h : hs) ys.push_back(chc_alpha(C, S, rho0 + sign * h));
      return extrapolate_to_zero(hs, ys);
    };
    const double at_n_above = lim_lin(+1.0);
    const double at_n_below = lim_lin(-1.0);
    const bool ok = std::fabs(at_p1 - 1.0) < 1e-3 && std::fabs(at_m1 + 1.0) < 1e-3 &&
                    std::fabs(at_n_above - alpha_n) < 1e-4 &&
                    std::fabs(at_n_below - alpha_n) < 1e-4;
    return std::pair{ok, fmt("lim(+1)=%.6g lim(-1)=%.6g lim(rho0+-)=%.6g/%.6g", at_p1, at_m1,
                             at_n_above, at_n_below)};
  });

  // 5. limits of the closed-orbit persistence value in energy
  run(5, 60.0, [&] {
    double worst_cen = 0.0, worst_sad = 0.0;
    for (const double rho : {-0.5, 0.0, 0.5}) {
      const SaddleCenter sc = saddle_center(C, rho);
      const double dE = sc.E_saddle - sc.E_center;
      auto val = [&](double u) { return cpo_alpha(C, S, rho, sc.E_center + u * dE); };
      const double lim_cen = richardson_limit(val, 1e-2, 6, 0.5);
      worst_cen = std::max(worst_cen, std::fabs(lim_cen - center_alpha(C, rho)));
      const double near_sad = cpo_alpha(C, S, rho, sc.E_saddle - 1e-9 * dE);
      worst_sad = std::max(worst_sad, std::fabs(near_sad - chc_alpha(C, S, rho)));
    }
    return std::pair{worst_cen < 1e-6 && worst_sad < 1e-5,
                     fmt("centre_defect=%.3g saddle_defect=%.3g", worst_cen, worst_sad)};
  });

  // 6. persistence-density map: strictly negative energy derivative
  run(6, 600.0, [&] {
    const auto cells = density_grid(C, S, 200, 200);
    double max_ap = -1e300, at_rho = 0.0, at_u = 0.0;
    for (const DensityCell& c : cells)
      if (c.alpha_prime > max_ap) {
        max_ap = c.alpha_prime;
        at_rho = c.rho;
        at_u = c.u;
      }
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    double worst_fd = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double rho = -0.9 + 1.8 * uni(rng);
      if (std::fabs(rho - rho0) < 0.05) continue;
      const SaddleCenter sc = saddle_center(C, rho);
      const double E_cen =
          rho >= rho0 ? sc.E_center : std::exp(-kTwoPi / C) * sc.E_center;
      const double dE = sc.E_saddle - E_cen;
      const double E = E_cen + (0.1 + 0.8 * uni(rng)) * dE;
      const OrbitIntegrals oi = orbit_integrals(C, S, level_orbit(C, rho, E), true);
      const double h = 1e-5 * dE;
      const OrbitIntegrals op = orbit_integrals(C, S, level_orbit(C, rho, E + h), false);
      const OrbitIntegrals om = orbit_integrals(C, S, level_orbit(C, rho, E - h), false);
      worst_fd = std::max({worst_fd,
                           std::fabs((op.a - om.a) / (2.0 * h) - oi.a_prime) /
                               std::fabs(oi.a_prime),
                           std::fabs((op.b - om.b) / (2.0 * h) - oi.b_prime) /
                               std::fabs(oi.b_prime)});
    }
    const bool ok = max_ap < 0.0 && worst_fd < 1e-4;
    return std::pair{ok, fmt("grid_max=%.6g at rho=%.3g u=%.3g, fd_rel=%.3g", max_ap, at_rho,
                             at_u, worst_fd)};
  });

  // 7. seeded equilibrium counting per parameter region
  run(7, 60.0, [&] {
    const SystemConfig c7 = SystemConfig::make(0.05, 0.125);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int bad = 0;
    constexpr int per_region = 500;
    int hole = 0, outside = 0;
    for (int k = 0; k < per_region; ++k) {
      const double theta = uni(rng);
      const double r_in = (2.0 * uni(rng) - 1.0) * 0.9 * c7.epsilon;
      if (find_equilibria(c7, tubular_to_param(c7, {theta, r_in})).size() != 2) ++bad;
      const double r_bnd = uni(rng) < 0.5 ? c7.epsilon : -c7.epsilon;
      if (find_equilibria(c7, tubular_to_param(c7, {theta, r_bnd}), 1e-4).size() != 1) ++bad;
    }
    while (hole < per_region || outside < per_region) {
      const ParamPoint om{4.0 * uni(rng) - 2.0, 4.0 * uni(rng) - 2.0};
      const RegionTag tag = region_classify(c7, om);
      if (tag == RegionTag::Hole && hole < per_region) {
        if (!find_equilibria(c7, om).empty()) ++bad;
        ++hole;
      } else if (tag == RegionTag::Outside && outside < per_region) {
        if (!find_equilibria(c7, om).empty()) ++bad;
        ++outside;
      }
    }
    return std::pair{bad == 0, fmt("violations=%d over 4x%d samples", bad, per_region)};
  });

  // 8. double-zero points and their normal-form coefficients
  run(8, 10.0, [&] {
    std::string detail;
    bool ok = true;
    for (const auto& [eps, tol] : std::vector<std::pair<double, double>>{{0.01, 0.20},
                                                                         {0.001, 0.05}}) {
      const SystemConfig c8 = SystemConfig::make(eps, 0.125);
      const auto bps = locate_B_points(c8);
      if (bps.size() != 4) {
        ok = false;
        detail += fmt("count=%zu at eps=%g ", bps.size(), eps);
        continue;
      }
      const double a_ref = 4.0 * kPi * kPi * kPi * c8.C * c8.C * eps;
      const double b_ref = -4.0 * kPi * kPi * eps;
      double worst = 0.0;
      for (const BPoint& bp : bps)
        worst = std::max({worst, std::fabs(std::fabs(bp.coeff_a) - a_ref) / a_ref,
                          std::fabs(std::fabs(bp.coeff_b) - std::fabs(b_ref)) /
                              std::fabs(b_ref)});
      if (worst >= tol) ok = false;
      detail += fmt("eps=%g rel=%.3g ", eps, worst);
    }
    return std::pair{ok, detail};
  });

  // 9. first Lyapunov coefficient along the centre arcs
  run(9, 30.0, [&] {
    const SystemConfig c9 = SystemConfig::make(0.005, 0.125);
    const TraceZeroArc top = trace_zero_arc(c9, Side::Top, ArcKind::CenterArc, 256);
    const TraceZeroArc bot = trace_zero_arc(c9, Side::Bottom, ArcKind::CenterArc, 256);
    auto arc_ok = [&](const TraceZeroArc& arc, double sign) {
      const std::size_t n = arc.samples.size();
      const std::size_t margin = n / 20;  // ends approach the double-zero points
      for (std::size_t i = margin; i + margin < n; i += 4)
        if (sign * lyapunov_l1(c9, arc.samples[i]).l1_full <= 0.0) return false;
      return true;
    };
    const LyapunovResult mid = lyapunov_l1(c9, top.samples[top.samples.size() / 2]);
    const double rel =
        std::fabs(mid.l1_full - mid.l1_first_order) / std::fabs(mid.l1_full);
    const bool ok = arc_ok(top, -1.0) && arc_ok(bot, +1.0) && rel < 0.10;
    return std::pair{ok, fmt("top<0 bottom>0 sampled, first_order_rel=%.3g", rel)};
  });

  // 10. transit map: affine unperturbed form and the exponentially small gap
  run(10, 300.0, [&] {
    const TransitMap tm(cfg, {rho0, 0.0}, false);
    const double z_star = -rho0 / (kPi * kPi);
    const double slope = std::exp(kTwoPi / C);
    const double K = (std::exp(-kTwoPi / C) - 1.0) * rho0 / (kPi * kPi);
    double worst_rel = 0.0;
    for (int i = 0; i <= 24; ++i) {
      const double z = tm.z_s() + 0.01 + 0.49 * double(i) / 24.0;
      const double expected = slope * (z - K);
      worst_rel = std::max(worst_rel, std::fabs(tm.map(z) - expected) / std::fabs(expected));
    }
    const bool fixed_ok =
        std::fabs(tm.z_s() - z_star) < 1e-8 && std::fabs(tm.z_u() - z_star) < 1e-8;

    const NPoint np = n_point(C, S);
    std::vector<double> s_inv, lg;
    for (const double eps : {0.02, 0.01, 0.005}) {
      const SystemConfig ce = SystemConfig::make(eps, 0.125);
      s_inv.push_back(1.0 / std::sqrt(eps));
      lg.push_back(snp_rhc_gap(ce, np.alpha_tilde + 0.5).log10_gap_alpha);
    }
    const double slope01 = (lg[1] - lg[0]) / (s_inv[1] - s_inv[0]);
    const double slope12 = (lg[2] - lg[1]) / (s_inv[2] - s_inv[1]);
    const bool gap_ok = lg[0] > lg[1] && lg[1] > lg[2] && slope12 <= slope01 && slope01 < 0.0;
    const bool ok = worst_rel < 1e-6 && fixed_ok && gap_ok;
    return std::pair{ok, fmt("affine_rel=%.3g log10_gaps=%.3g/%.3g/%.3g", worst_rel, lg[0],
                             lg[1], lg[2])};
  });

  // 11. Reeb components in the hole, none outside the resonance strip
  run(11, 300.0, [&] {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int hole_ok = 0, out_ok = 0, sect_ok = 0;
    int hole_n = 0, out_n = 0, sect_n = 0;
    while (hole_n < 50 || out_n < 50 || sect_n < 50) {
      const double ang = kTwoPi * uni(rng);
      if (hole_n < 50) {
        const double rad = 0.35 * std::sqrt(uni(rng));
        const ParamPoint om{rad * std::cos(ang), rad * std::sin(ang)};
        if (region_classify(cfg, om) == RegionTag::Hole) {
          ++hole_n;
          if (reeb_count(cfg, om) == 2) ++hole_ok;
        }
      }
      if (out_n < 50) {
        // outside the resonance region but inside the horizontal strip
        // |omega_y| < 1 - delta, where horizontal circles are guaranteed
        const ParamPoint om{(1.1 + 0.9 * uni(rng)) * (uni(rng) < 0.5 ? -1.0 : 1.0),
                            1.8 * uni(rng) - 0.9};
        if (region_classify(cfg, om) == RegionTag::Outside) {
          ++out_n;
          const auto circles = invariant_circles(cfg, om);
          if (circles.size() == 2 && circles[0].x_direction == circles[1].x_direction)
            ++out_ok;
        }
      }
      if (sect_n < 50) {
        const double rad = 1.4 + 0.6 * uni(rng);
        const ParamPoint om{rad * std::cos(ang), rad * std::sin(ang)};
        if (region_classify(cfg, om) == RegionTag::Outside) {
          ++sect_n;
          if (cross_section_functional(cfg, om).certified_min > 0.0) ++sect_ok;
        }
      }
    }
    const bool ok = hole_ok == 50 && out_ok == 50 && sect_ok == 50;
    return std::pair{ok, fmt("hole=%d/50 outside=%d/50 sections=%d/50", hole_ok, out_ok,
                             sect_ok)};
  });

  // 12. direct positivity of the weighted loop integral
  run(12, 60.0, [&] {
    double worst = 1e300;
    for (const double phi : {0.06, 0.125, 0.18}) {
      const double Cp = std::cos(kTwoPi * phi), Sp = std::sin(kTwoPi * phi);
      const double r0 = rho_necklace(Cp);
      for (int i = 0; i < 100; ++i) {
        const double t = (double(i) + 0.5) / 100.0;
        // left loops above the necklace value, right loops below
        const double rho_l = r0 + 0.01 + (0.99 - r0 - 0.01) * t;
        const EnergyOrbit left = chc_orbit(Cp, rho_l);
        worst = std::min(worst, loop_weight_integral(Cp, Sp, left, left.x_right));
        const double rho_r = -0.99 + (r0 - 0.01 + 0.99) * t;
        const EnergyOrbit right = chc_orbit(Cp, rho_r);
        worst = std::min(worst, loop_weight_integral(Cp, Sp, right, right.x_left));
      }
    }
    const SeparationCheck chk = chc_above_ns_check(C, S);
    const bool degenerate_ok = std::fabs(chk.rho_t) < 1e-15 && std::fabs(chk.x_f) < 1e-15;
    return std::pair{worst > 0.0 && degenerate_ok,
                     fmt("min_integral=%.3g rho_t=%.3g x_f=%.3g", worst, chk.rho_t, chk.x_f)};
  });

  // 13. the full verification checklist
  run(13, 600.0, [&] {
    const ChecklistReport rep = checklist(cfg, 1);
    bool evidence_ok = false;
    for (const ChecklistEntry& e : rep.entries)
      if (e.id == "7b") evidence_ok = e.status == CheckStatus::NumericEvidence;
    return std::pair{rep.all_passed() && evidence_ok,
                     fmt("all_passed=%d entries=%zu 7b_numeric_evidence=%d",
                         int(rep.all_passed()), rep.entries.size(), int(evidence_ok))};
  });

  if (failures == 0) {
    std::printf("acceptance: all 13 criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria failed\n", failures);
  return 1;
}
