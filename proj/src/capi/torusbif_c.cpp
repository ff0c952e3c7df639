#include "torusbif.h"

#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "core/diagram.hpp"
#include "core/error.hpp"
#include "core/flowsim.hpp"
#include "core/geometry.hpp"
#include "core/melnikov.hpp"

using namespace torusbif;

struct tb_system {
  SystemConfig cfg;
};

namespace {

thread_local std::string g_last_error;

tb_status status_of(errc code) {
  switch (code) {
    case errc::invalid_argument: return TB_EINVAL;
    case errc::no_convergence:
    case errc::continuation_stalled:
    case errc::step_underflow: return TB_ENOCONV;
    case errc::degenerate:
    case errc::not_found:
    case errc::not_saddle_node:
    case errc::not_center:
    case errc::no_equilibria:
    case errc::energy_out_of_range:
    case errc::at_necklace:
    case errc::no_section:
    case errc::no_transit: return TB_EDOMAIN;
    case errc::quadrature_failure: return TB_ENUMERIC;
    case errc::positivity_failed:
    case errc::inequality_violated: return TB_ECHECKFAIL;
    case errc::io_error: return TB_EIO;
  }
  return TB_EINTERNAL;
}

char* dup_string(const std::string& s) {
  char* out = new (std::nothrow) char[s.size() + 1];
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <class F>
tb_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const Error& e) {
    g_last_error = std::string(errc_name(e.code())) + ": " + e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TB_EINTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return TB_EINTERNAL;
  }
}

tb_status emit(const std::string& s, char** out) {
  *out = dup_string(s);
  if (!*out) {
    g_last_error = "out of memory";
    return TB_EINTERNAL;
  }
  return TB_OK;
}

}  // namespace

extern "C" {

const char* tb_version(void) { return "1.0.0"; }

const char* tb_last_error(void) { return g_last_error.c_str(); }

void tb_string_free(char* s) { delete[] s; }

tb_status tb_system_create(double epsilon, double phi, tb_system** out) {
  if (!out) {
    g_last_error = "null output pointer";
    return TB_EINVAL;
  }
  *out = nullptr;
  return guarded([&] {
    auto* sys = new tb_system{SystemConfig::make(epsilon, phi)};
    *out = sys;
    return TB_OK;
  });
}

void tb_system_destroy(tb_system* sys) { delete sys; }

tb_status tb_constants_json(const tb_system* sys, char** out_json) {
  if (!sys || !out_json) {
    g_last_error = "null argument";
    return TB_EINVAL;
  }
  return guarded([&] {
    const SystemConfig& cfg = sys->cfg;
    const RhcConstants rc = rhc_constants(cfg.C, cfg.S);
    const NPoint np = n_point(cfg.C, cfg.S);
    const KPoint kp = k_point(cfg.C, cfg.S);
    nlohmann::ordered_json j;
    j["epsilon"] = cfg.epsilon;
    j["phi"] = cfg.phi;
    j["C"] = cfg.C;
    j["S"] = cfg.S;
    j["kappa_max"] = curvature_max(cfg);
    j["monotonicity_constant"] = monotonicity_constant(cfg);
    j["rho_necklace"] = rho_necklace(cfg.C);
    j["necklace_amplitude"] = necklace_amplitude(cfg.C);
    j["x_phase"] = x_phase(cfg.C);
    const RhcConstants rq = rhc_constants_quadrature(cfg.C, cfg.S);
    j["rhc"] = {{"a", rc.a}, {"b", rc.b}, {"c", rc.c}, {"k", rc.k}};
    j["rhc_quadrature"] = {{"a", rq.a}, {"b", rq.b}, {"c", rq.c}};
    j["N"] = {{"rho_tilde", np.rho_tilde}, {"alpha_tilde", np.alpha_tilde}};
    j["K"] = {{"rho_tilde", kp.rho_tilde}, {"alpha_tilde", kp.alpha_tilde}};
    j["hopf_range_condition"] = hopf_range_condition(cfg.phi);
    return emit(j.dump(2) + "\n", out_json);
  });
}

tb_status tb_checklist_json(const tb_system* sys, uint64_t seed, int* all_passed,
                            char** out_json) {
  if (!sys || !out_json) {
    g_last_error = "null argument";
    return TB_EINVAL;
  }
  return guarded([&] {
    const ChecklistReport rep = checklist(sys->cfg, seed);
    if (all_passed) *all_passed = rep.all_passed() ? 1 : 0;
    return emit(checklist_to_json(rep), out_json);
  });
}

tb_status tb_diagram(const tb_system* sys, const char* format, char** out) {
  if (!sys || !format || !out) {
    g_last_error = "null argument";
    return TB_EINVAL;
  }
  return guarded([&]() -> tb_status {
    const DiagramBundle b = assemble(sys->cfg);
    const std::string fmt(format);
    if (fmt == "csv") return emit(bundle_to_csv(b), out);
    if (fmt == "json") return emit(bundle_to_json(b), out);
    if (fmt == "svg") return emit(bundle_to_svg(b), out);
    g_last_error = "unknown format: " + fmt;
    return TB_EINVAL;
  });
}

tb_status tb_density(const tb_system* sys, size_t n_rho, size_t n_u, const char* format,
                     char** out) {
  if (!sys || !format || !out) {
    g_last_error = "null argument";
    return TB_EINVAL;
  }
  return guarded([&]() -> tb_status {
    const auto cells = density_grid(sys->cfg.C, sys->cfg.S, n_rho, n_u);
    const std::string fmt(format);
    if (fmt == "csv") return emit(density_to_csv(cells), out);
    if (fmt == "svg") return emit(density_to_svg(cells, n_rho, n_u), out);
    g_last_error = "unknown format: " + fmt;
    return TB_EINVAL;
  });
}

tb_status tb_transit_map_json(const tb_system* sys, double rho, double alpha_tilde,
                              int eps_terms_on, int n_samples, char** out_json) {
  if (!sys || !out_json) {
    g_last_error = "null argument";
    return TB_EINVAL;
  }
  if (n_samples < 2) {
    g_last_error = "n_samples must be at least 2";
    return TB_EINVAL;
  }
  return guarded([&] {
    const TransitMap tm(sys->cfg, ReducedParams{rho, alpha_tilde}, eps_terms_on != 0);
    nlohmann::ordered_json j;
    j["x_section"] = tm.x_section();
    j["saddle_x"] = tm.saddle_x();
    j["unstable_eigenvalue"] = tm.unstable_eigenvalue();
    j["z_s"] = tm.z_s();
    j["z_u"] = tm.z_u();
    auto& arr = j["samples"] = nlohmann::ordered_json::array();
    const double z_lo = tm.z_s() * 1.02, z_hi = tm.z_s() * 3.0;
    for (int i = 0; i < n_samples; ++i) {
      const double z = z_lo + (z_hi - z_lo) * double(i) / double(n_samples - 1);
      const TransitMapSample s = tm.sample(z);
      arr.push_back({{"z", s.z}, {"Tz", s.Tz}, {"slope", s.slope}});
    }
    return emit(j.dump(2) + "\n", out_json);
  });
}

tb_status tb_equilibria_json(const tb_system* sys, double omega_x, double omega_y,
                             char** out_json) {
  if (!sys || !out_json) {
    g_last_error = "null argument";
    return TB_EINVAL;
  }
  return guarded([&] {
    const ParamPoint om{omega_x, omega_y};
    const auto eqs = find_equilibria(sys->cfg, om);
    nlohmann::ordered_json j;
    j["region"] = region_tag_name(region_classify(sys->cfg, om));
    auto& arr = j["equilibria"] = nlohmann::ordered_json::array();
    for (const Equilibrium& eq : eqs)
      arr.push_back({{"x", eq.state.x},
                     {"y", eq.state.y},
                     {"det", eq.det},
                     {"trace", eq.tr},
                     {"class", eq_class_name(eq.cls)}});
    return emit(j.dump(2) + "\n", out_json);
  });
}

}  // extern "C"
