#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "torusbif.h"

namespace {

struct SysDeleter {
  void operator()(tb_system* s) const { tb_system_destroy(s); }
};
using SysPtr = std::unique_ptr<tb_system, SysDeleter>;

struct StrDeleter {
  void operator()(char* s) const { tb_string_free(s); }
};
using StrPtr = std::unique_ptr<char, StrDeleter>;

int die(const char* what) {
  std::cerr << "error: " << what << ": " << tb_last_error() << "\n";
  return 2;
}

int write_out(const std::string& path, const char* content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  f << content;
  if (!f) {
    std::cerr << "error: cannot write " << path << "\n";
    return 2;
  }
  return 0;
}

bool parse_grid(const std::string& grid, std::size_t& n1, std::size_t& n2) {
  unsigned a = 0, b = 0;
  if (std::sscanf(grid.c_str(), "%ux%u", &a, &b) == 2 && a > 0 && b > 0) {
    n1 = a;
    n2 = b;
    return true;
  }
  if (std::sscanf(grid.c_str(), "%u", &a) == 1 && a > 0) {
    n1 = n2 = a;
    return true;
  }
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bifurcation-diagram toolkit for a monotone two-parameter torus family"};
  app.require_subcommand(1);

  double epsilon = 0.01;
  double phi = 0.125;
  double tol = 1e-9;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string format = "json";
  std::string grid = "200x200";
  app.add_option("--epsilon", epsilon, "perturbation size (0 < eps < 1/kappa_max)");
  app.add_option("--phi", phi, "phase parameter, |phi| < 1/4");
  app.add_option("--grid", grid, "grid size, N or NxM");
  app.add_option("--tol", tol, "reporting tolerance recorded in artifacts");
  app.add_option("--seed", seed, "RNG seed for Monte-Carlo checks");
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--format", format, "output format: csv, json or svg");

  auto* cmd_verify = app.add_subcommand("verify", "run the assumption checklist");
  auto* cmd_diagram = app.add_subcommand("diagram", "assemble and export the diagram");
  auto* cmd_density = app.add_subcommand("cpo-density", "persistence-value density grid");
  auto* cmd_transit = app.add_subcommand("transit-map", "sample the slow-flow transit map");
  auto* cmd_constants = app.add_subcommand("constants", "closed forms vs quadrature table");

  double rho = -0.8164965809277260;  // necklace value at phi = 1/8
  double alpha_tilde = 0.0;
  int n_samples = 64;
  bool eps_terms = true;
  cmd_transit->add_option("--rho", rho, "scaled radial parameter");
  cmd_transit->add_option("--alpha", alpha_tilde, "scaled angular parameter");
  cmd_transit->add_option("--samples", n_samples, "number of map samples");
  cmd_transit->add_flag("--eps-terms,!--no-eps-terms", eps_terms,
                        "include the order-sqrt(eps) correction terms");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  if (tol <= 0.0) {
    std::cerr << "error: --tol must be positive\n";
    return 2;
  }

  tb_system* raw = nullptr;
  if (tb_system_create(epsilon, phi, &raw) != TB_OK) return die("invalid configuration");
  SysPtr sys(raw);

  char* text = nullptr;
  if (cmd_verify->parsed()) {
    int all_passed = 0;
    if (tb_checklist_json(sys.get(), seed, &all_passed, &text) != TB_OK)
      return die("checklist failed to run");
    StrPtr guard(text);
    const int rc = write_out(out_path, text);
    if (rc != 0) return rc;
    return all_passed ? 0 : 1;
  }
  if (cmd_diagram->parsed()) {
    if (tb_diagram(sys.get(), format.c_str(), &text) != TB_OK) return die("diagram export");
    StrPtr guard(text);
    return write_out(out_path, text);
  }
  if (cmd_density->parsed()) {
    std::size_t n_rho = 0, n_u = 0;
    if (!parse_grid(grid, n_rho, n_u)) {
      std::cerr << "error: bad --grid value: " << grid << "\n";
      return 2;
    }
    if (format == "json") format = "csv";  // density artifacts are csv or svg
    if (tb_density(sys.get(), n_rho, n_u, format.c_str(), &text) != TB_OK)
      return die("density export");
    StrPtr guard(text);
    return write_out(out_path, text);
  }
  if (cmd_transit->parsed()) {
    if (tb_transit_map_json(sys.get(), rho, alpha_tilde, eps_terms ? 1 : 0, n_samples, &text) !=
        TB_OK)
      return die("transit map");
    StrPtr guard(text);
    return write_out(out_path, text);
  }
  if (tb_constants_json(sys.get(), &text) != TB_OK) return die("constants");
  StrPtr guard(text);
  return write_out(out_path, text);
}
