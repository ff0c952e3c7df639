#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/equilibria.hpp"
#include "core/flowsim.hpp"
#include "core/melnikov.hpp"

namespace torusbif {

// A curve of the bifurcation diagram, carried both in its natural parameters
// (param1, param2) and mapped to the Omega plane.
struct LabelledCurve {
  std::string label;
  std::string anchor;  // machine-readable derivation tag for audit trails
  std::vector<double> param1;
  std::vector<double> param2;
  std::vector<ParamPoint> omega;
};

struct CodimTwoPoint {
  std::string label;  // "B", "Z", "N", "K", "H"
  std::string anchor;
  double param1 = 0.0;
  double param2 = 0.0;
  ParamPoint omega;
};

struct DiagramBundle {
  SystemConfig config;
  std::vector<LabelledCurve> curves;
  std::vector<CodimTwoPoint> points;
  std::string tool_version;
  double tol = 0.0;
  std::uint64_t seed = 0;
};

// Maps scaled coordinates at the top extremity into the Omega plane via
// theta = 1/4 - eps alpha_tilde / 2pi, r = eps rho; the bottom extremity is
// the image under Omega -> -Omega.
ParamPoint scaled_to_omega(const SystemConfig& cfg, double alpha_tilde, double rho, bool top);
ReducedParams omega_to_scaled(const SystemConfig& cfg, const ParamPoint& omega, bool top);

DiagramBundle assemble(const SystemConfig& cfg);

enum class CheckStatus { Verified, NumericEvidence, Skipped };

struct ChecklistEntry {
  std::string id;  // "1", "2", "3a", ..., "9"
  CheckStatus status = CheckStatus::Verified;
  bool passed = false;
  std::string evidence;
};

struct ChecklistReport {
  std::vector<ChecklistEntry> entries;
  std::uint64_t seed = 0;
  bool all_passed() const;
};

// Runs the numbered-assumption checks; failures are recorded, not thrown.
ChecklistReport checklist(const SystemConfig& cfg, std::uint64_t seed);

const char* check_status_name(CheckStatus s);

// Serialisation (deterministic output; CSV uses 17 significant digits).
std::string bundle_to_csv(const DiagramBundle& bundle);
std::string bundle_to_json(const DiagramBundle& bundle);
std::string bundle_to_svg(const DiagramBundle& bundle);
std::string checklist_to_json(const ChecklistReport& report);
std::string density_to_csv(const std::vector<DensityCell>& cells);
std::string density_to_svg(const std::vector<DensityCell>& cells, std::size_t n_rho,
                           std::size_t n_u);

void write_file(const std::string& path, const std::string& content);

}  // namespace torusbif
