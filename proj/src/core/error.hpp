#pragma once

#include <stdexcept>
#include <string>

namespace torusbif {

enum class errc {
  invalid_argument,
  no_convergence,
  degenerate,
  positivity_failed,
  not_found,
  not_saddle_node,
  not_center,
  no_equilibria,
  energy_out_of_range,
  at_necklace,
  quadrature_failure,
  continuation_stalled,
  inequality_violated,
  no_section,
  no_transit,
  step_underflow,
  io_error,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_argument: return "invalid_argument";
    case errc::no_convergence: return "no_convergence";
    case errc::degenerate: return "degenerate";
    case errc::positivity_failed: return "positivity_failed";
    case errc::not_found: return "not_found";
    case errc::not_saddle_node: return "not_saddle_node";
    case errc::not_center: return "not_center";
    case errc::no_equilibria: return "no_equilibria";
    case errc::energy_out_of_range: return "energy_out_of_range";
    case errc::at_necklace: return "at_necklace";
    case errc::quadrature_failure: return "quadrature_failure";
    case errc::continuation_stalled: return "continuation_stalled";
    case errc::inequality_violated: return "inequality_violated";
    case errc::no_section: return "no_section";
    case errc::no_transit: return "no_transit";
    case errc::step_underflow: return "step_underflow";
    case errc::io_error: return "io_error";
  }
  return "unknown";
}

}  // namespace torusbif
