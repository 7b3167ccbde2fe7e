#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "akcotton/cli.hpp"

int main(int argc, char** argv) {
  akc::RunConfig cfg;
  cfg.tolerance = akc::tolerance_from_env(cfg.tolerance);

  CLI::App app{"Curvature, Cotton tensors, solitons and Cotton flow on 3D metric Lie algebras"};
  app.set_version_flag("--version", std::string(akc::kToolVersion));
  app.require_subcommand(1);

  bool machine = false;
  std::string input;
  std::string ansatz = "general";
  std::string grid = "0.5,1,2";
  std::string export_path;

  auto common = [&](CLI::App* sub, bool needs_input) {
    sub->add_flag("--machine", machine, "emit a JSON report instead of tables");
    sub->add_option("--tol", cfg.tolerance, "global tolerance (default 1e-9, env AKCOTTON_TOL)")
        ->check(CLI::PositiveNumber);
    if (needs_input) sub->add_option("geometry", input, "geometry JSON file")->required();
  };

  auto* curv = app.add_subcommand("curvature", "connection, Ricci tensor, classification");
  common(curv, true);
  curv->add_option("--parallel-tol", cfg.parallel_tol, "tolerance on |nabla S|")
      ->check(CLI::PositiveNumber);
  curv->add_option("--structure-tol", cfg.structure_tol, "tolerance for xi detection")
      ->check(CLI::PositiveNumber);

  auto* st = app.add_subcommand("structure", "detect the almost Kenmotsu structure");
  common(st, true);
  st->add_option("--structure-tol", cfg.structure_tol, "tolerance for xi detection and identities")
      ->check(CLI::PositiveNumber);

  auto* cot = app.add_subcommand("cotton", "Cotton and Cotton-York tensors");
  common(cot, true);
  cot->add_option("--structure-tol", cfg.structure_tol, "tolerance for xi detection")
      ->check(CLI::PositiveNumber);

  auto* sol = app.add_subcommand("soliton", "solve L_V g + C = sigma g");
  common(sol, true);
  sol->add_option("--ansatz", ansatz, "collinear | orthogonal | general")
      ->check(CLI::IsMember({"collinear", "orthogonal", "general"}));

  auto* flow = app.add_subcommand("flow", "integrate g' = C(g) with RK4");
  common(flow, true);
  flow->add_option("--dt", cfg.dt, "time step")->check(CLI::PositiveNumber);
  flow->add_option("--steps", cfg.steps, "number of steps")->check(CLI::PositiveNumber);
  flow->add_option("--stride", cfg.stride, "record every n-th step")->check(CLI::PositiveNumber);
  flow->add_flag("--normalize", cfg.normalize, "rescale to unit volume after each step");
  flow->add_option("--fixed-point-tol", cfg.fixed_point_tol, "threshold on |C| for a fixed point")
      ->check(CLI::PositiveNumber);
  flow->add_option("--export", export_path, "write the trajectory as CSV");

  auto* vp = app.add_subcommand("verify-paper", "run the soliton theorem checks over a lambda grid");
  common(vp, false);
  vp->add_option("--grid", grid, "comma separated lambda values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? akc::kExitOk : akc::kExitInputError;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.format = machine ? akc::OutputFormat::Machine : akc::OutputFormat::Human;
  if (!input.empty()) cfg.input_path = input;
  if (!export_path.empty()) cfg.export_path = export_path;
  try {
    cfg.ansatz = akc::ansatz_from_string(ansatz);
    cfg.grid = akc::parse_grid(grid);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return akc::kExitInputError;
  }
  return akc::run(cfg, std::cout, std::cerr);
}
