#include "core/melnikov.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

#include "core/error.hpp"
#include "core/numerics.hpp"

namespace torusbif {

namespace {

constexpr double kPi = 0.5 * kTwoPi;

double f_weight(double C, double S, double x) {
  return std::cos(kTwoPi * x) + (C - S) * std::sin(kTwoPi * x);
}

}  // namespace

RhcConstants rhc_constants(double C, double S) {
  RhcConstants r;
  r.k = 4.0 * C * std::exp(-std::atan(1.0 / C) / C) * std::cosh(kPi / C) /
        (kPi * std::pow(1.0 + C * C, 0.75) * (4.0 + C * C));
  r.a = r.k * std::sqrt(1.0 + C * C);
  r.b = -r.k * 2.0 * C * C * (C + 2.0 * S) / (4.0 + 9.0 * C * C);
  r.c = 0.25 * r.k * std::pow(1.0 + C * C, 0.75) * (4.0 + C * C) * std::tanh(kPi / C);
  return r;
}

RhcConstants rhc_constants_quadrature(double C, double S) {
  const double xg = x_phase(C);
  const double w = std::pow(1.0 + C * C, -0.25);
  RhcConstants r;
  r.a = integrate([&](double x) {
    return -w * std::exp(-kTwoPi * x / C) * std::sin(kPi * (x - xg));
  }, xg - 0.5, xg + 0.5);
  r.b = integrate([&](double x) {
    const double cp = std::cos(kPi * (x - xg));
    return -w * std::exp(-kTwoPi * x / C) * std::sin(kPi * (x - xg)) *
           (std::cos(kTwoPi * x) - 2.0 * S * cp * cp * w * w);
  }, xg - 0.5, xg + 0.5);
  r.c = integrate([&](double x) { return std::exp(-kTwoPi * x / C); }, xg - 0.5, xg + 0.5);
  r.k = r.a / std::sqrt(1.0 + C * C);
  return r;
}

double rhc_rho_tilde(double C, double S, double alpha_tilde, int branch) {
  const RhcConstants r = rhc_constants(C, S);
  return branch * (C * r.a * alpha_tilde - r.b) / r.c;
}

double rhc_alpha_tilde(double C, double S, double rho_tilde, int branch) {
  const RhcConstants r = rhc_constants(C, S);
  return (branch * r.c * rho_tilde + r.b) / (C * r.a);
}

NPoint n_point(double C, double S) {
  return {-2.0 * C * (C + 2.0 * S) / ((4.0 + 9.0 * C * C) * std::sqrt(1.0 + C * C)), 0.0};
}

double ns_alpha(double C, double rho) { return rho - std::sqrt(1.0 - rho * rho) / C; }

double center_alpha(double C, double rho) { return rho + std::sqrt(1.0 - rho * rho) / C; }

KPoint k_point(double C, double S) {
  KPoint k;
  k.alpha_tilde = 2.0 * rho_necklace(C);
  k.rho_tilde = -16.0 * C * (2.0 - S * C + 4.0 * C * C) /
                (std::pow(1.0 + C * C, 0.75) * (4.0 + C * C) * (4.0 + 9.0 * C * C) *
                 std::tanh(kPi / C));
  return k;
}

OrbitIntegrals orbit_integrals(double C, double S, const EnergyOrbit& orbit,
                               bool with_derivatives) {
  if (orbit.homoclinic && with_derivatives)
    fail(errc::invalid_argument, "orbit energy derivatives diverge on the homoclinic loop");
  const double rho = orbit.rho;
  const double pi = 0.5 * kTwoPi;
  // substitute x = m + R sin t: dx = R cos t dt absorbs the sqrt turning-point
  // behaviour of eta, and dx / eta = dt / sqrt(psi) with psi smooth positive
  const double m = 0.5 * (orbit.x_left + orbit.x_right);
  const double R = 0.5 * (orbit.x_right - orbit.x_left);
  auto x_of = [&](double t) { return m + R * std::sin(t); };
  auto psi = [&](double t) {
    // within ~1e-6 of +-pi/2, x_of(t) rounds onto the turning points and the
    // ratio degenerates to 0/0; evaluate on the smooth plateau just inside.
    // For very small orbits rounding can still produce a non-positive ratio,
    // so widen the margin until the plateau is reached.
    for (double margin = 1e-6; margin < 0.5; margin *= 10.0) {
      const double t_max = 0.5 * pi - margin;
      const double tc = std::clamp(t, -t_max, t_max);
      const double x = x_of(tc);
      const double denom = (x - orbit.x_left) * (orbit.x_right - x);
      const double v = orbit.eta_sq(x) / denom;
      if (std::isfinite(v) && v > 0.0) return v;
    }
    fail(errc::quadrature_failure, "orbit_integrals: degenerate orbit profile");
  };
  OrbitIntegrals r{};
  r.a = (2.0 * kTwoPi / C) * integrate([&](double t) {
    const double x = x_of(t);
    return std::exp(-kTwoPi * x / C) * orbit.eta(x) * R * std::cos(t);
  }, -0.5 * pi, 0.5 * pi);
  r.b = (2.0 * kTwoPi / C) * integrate([&](double t) {
    const double x = x_of(t);
    return (f_weight(C, S, x) + S * rho) * std::exp(-kTwoPi * x / C) * orbit.eta(x) * R *
           std::cos(t);
  }, -0.5 * pi, 0.5 * pi);
  if (with_derivatives) {
    r.a_prime = (2.0 / (C * C)) * integrate_ts([&](double t) {
      return 1.0 / std::sqrt(psi(t));
    }, -0.5 * pi, 0.5 * pi);
    r.b_prime = (2.0 / (C * C)) * integrate_ts([&](double t) {
      return (f_weight(C, S, x_of(t)) + S * rho) / std::sqrt(psi(t));
    }, -0.5 * pi, 0.5 * pi);
  }
  return r;
}

double chc_alpha(double C, double S, double rho) {
  const EnergyOrbit orbit = chc_orbit(C, rho);
  const OrbitIntegrals r = orbit_integrals(C, S, orbit, false);
  return r.b / (C * r.a);
}

double cpo_alpha(double C, double S, double rho, double E) {
  const OrbitIntegrals r = orbit_integrals(C, S, level_orbit(C, rho, E), false);
  return r.b / (C * r.a);
}

double cpo_alpha_prime(double C, double S, double rho, double E) {
  const OrbitIntegrals r = orbit_integrals(C, S, level_orbit(C, rho, E), true);
  return (r.b_prime * r.a - r.b * r.a_prime) / (C * r.a * r.a);
}

std::vector<ZPoint> z_points(double C, double S, double epsilon) {
  const double rho0 = rho_necklace(C);
  std::vector<ZPoint> out;
  for (const int branch : {+1, -1})
    for (const double rho : {+1.0, -1.0}) {
      const double rho_tilde = (rho - rho0) / std::sqrt(epsilon);
      out.push_back({rho, rhc_alpha_tilde(C, S, rho_tilde, branch), branch});
    }
  return out;
}

std::vector<DensityCell> density_grid(double C, double S, std::size_t n_rho, std::size_t n_u) {
  if (n_rho == 0 || n_u == 0) fail(errc::invalid_argument, "density_grid: empty grid");
  std::vector<DensityCell> cells(n_rho * n_u);

  auto fill_row = [&](std::size_t i) {
    const double rho = -1.0 + 2.0 * (double(i) + 0.5) / double(n_rho);
    const SaddleCenter sc = saddle_center(C, rho);
    const double E_cen = rho >= rho_necklace(C)
                             ? sc.E_center
                             : std::exp(-kTwoPi / C) * sc.E_center;
    for (std::size_t j = 0; j < n_u; ++j) {
      const double u = (double(j) + 0.5) / double(n_u);
      const double E = E_cen + u * (sc.E_saddle - E_cen);
      DensityCell& cell = cells[i * n_u + j];
      cell.rho = rho;
      cell.u = u;
      cell.E = E;
      cell.alpha_tilde = cpo_alpha(C, S, rho, E);
      cell.alpha_prime = cpo_alpha_prime(C, S, rho, E);
    }
  };

  const std::size_t n_workers = std::min<std::size_t>(
      n_rho, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> workers;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (std::size_t w = 0; w < n_workers; ++w)
    workers.emplace_back([&, w] {
      for (std::size_t i = w; i < n_rho; i += n_workers) {
        try {
          fill_row(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  for (std::thread& t : workers) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return cells;
}

SeparationCheck chc_above_ns_check(double C, double S) {
  SeparationCheck chk;
  chk.rho_t = -(C - S) / std::sqrt(2.0 - 2.0 * C * S);
  chk.x_f = std::atan(C - S) / kTwoPi;
  chk.eta_minus_bound = 1.0 / kPi;

  auto l = [&](double rho) {
    const double em = std::exp(-kTwoPi / C);
    return std::sqrt(C) / (std::sqrt(2.0) * kPi * std::sqrt(1.0 + C * C)) *
           std::sqrt((1.0 + em) * std::sqrt(1.0 - rho * rho) - (1.0 - em) * C * rho);
  };
  const double rho0 = rho_necklace(C);
  chk.lhs = std::exp(-kTwoPi * (2.0 * chk.x_f - 0.5) / C);
  chk.rhs = 2.0 / (kPi * std::min(l(rho0), l(chk.rho_t)));
  chk.ok = chk.rho_t > rho0 && chk.lhs > chk.rhs;
  return chk;
}

}  // namespace torusbif
