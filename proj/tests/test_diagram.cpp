#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "core/diagram.hpp"

using namespace torusbif;

namespace {
const SystemConfig cfg = SystemConfig::make(0.01, 0.125);

const DiagramBundle& bundle() {
  static const DiagramBundle b = assemble(cfg);
  return b;
}
}

TEST_CASE("scaled coordinates round-trip through the parameter plane") {
  for (const bool top : {true, false})
    for (const double alpha : {-0.5, 0.0, 0.7})
      for (const double rho : {-0.9, 0.1, 0.8}) {
        const ParamPoint om = scaled_to_omega(cfg, alpha, rho, top);
        const ReducedParams back = omega_to_scaled(cfg, om, top);
        CHECK(back.alpha_tilde == doctest::Approx(alpha).epsilon(1e-10));
        CHECK(back.rho == doctest::Approx(rho).epsilon(1e-10));
      }
}

TEST_CASE("bundle carries the expected curves and point multiplicities") {
  const DiagramBundle& b = bundle();
  std::map<std::string, int> curve_count, point_count;
  for (const LabelledCurve& c : b.curves) {
    ++curve_count[c.label];
    CHECK(!c.anchor.empty());
    CHECK(c.param1.size() == c.omega.size());
    CHECK(c.param2.size() == c.omega.size());
    CHECK(c.omega.size() >= 2);
  }
  for (const CodimTwoPoint& p : b.points) ++point_count[p.label];
  CHECK(curve_count["sn_inner"] == 1);
  CHECK(curve_count["sn_outer"] == 1);
  CHECK(curve_count["hopf_top"] == 1);
  CHECK(curve_count["ns_top"] == 1);
  CHECK(point_count["B"] == 4);
  CHECK(point_count["N"] == 2);
  CHECK(point_count["K"] == 4);
  CHECK(point_count["H"] == 2);
  CHECK(point_count["Z"] == 8);
}

TEST_CASE("CSV output is well-formed and deterministic") {
  const std::string csv = bundle_to_csv(bundle());
  CHECK(csv.rfind("label,param1,param2,omega_x,omega_y\r\n", 0) == 0);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  const std::size_t n_cols = 5;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::size_t commas = 0;
    for (const char ch : line)
      if (ch == ',') ++commas;
    CHECK(commas == n_cols - 1);
    ++rows;
  }
  CHECK(rows > 100);
  CHECK(csv == bundle_to_csv(bundle()));
}

TEST_CASE("JSON output parses with schema fields present") {
  const std::string js = bundle_to_json(bundle());
  CHECK(js.find("\"schema_version\"") != std::string::npos);
  CHECK(js.find("\"curves\"") != std::string::npos);
  CHECK(js.find("\"points\"") != std::string::npos);
  CHECK(js.find("\"anchor\"") != std::string::npos);
}

TEST_CASE("SVG output is a complete document") {
  const std::string svg = bundle_to_svg(bundle());
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
}

TEST_CASE("checklist covers every numbered item exactly once and is seeded") {
  const ChecklistReport rep = checklist(cfg, 1);
  std::map<std::string, int> seen;
  for (const ChecklistEntry& e : rep.entries) ++seen[e.id];
  for (const char* id : {"1", "2", "3a", "3b", "4a", "4b", "4c", "5a", "5b", "5c", "6", "7a",
                         "7b", "8", "9"})
    CHECK(seen[id] == 1);
  CHECK(rep.entries.size() == 15);
  CHECK(rep.seed == 1);
  const std::string js = checklist_to_json(rep);
  CHECK(js.find("\"all_passed\"") != std::string::npos);
}

TEST_CASE("density serialisers agree with the grid shape") {
  const std::vector<DensityCell> cells = density_grid(cfg.C, cfg.S, 4, 3);
  const std::string csv = density_to_csv(cells);
  CHECK(csv.rfind("rho,u,E,alpha_tilde,alpha_prime\r\n", 0) == 0);
  std::size_t rows = 0;
  for (std::size_t pos = 0; (pos = csv.find('\n', pos)) != std::string::npos; ++pos) ++rows;
  CHECK(rows == 1 + cells.size());
  const std::string svg = density_to_svg(cells, 4, 3);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("rect") != std::string::npos);
}
