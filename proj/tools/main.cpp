#include <CLI11.hpp>

#include "greenexp/cli_run.hpp"

// Command-line front end: five subcommands sharing one flag set, all work
// delegated to greenexp::run. Flag errors exit with code 2.
int main(int argc, char** argv) {
  CLI::App app{"Singular expansions and numeric verification of Green's functions of "
               "divergence-form operators"};
  app.require_subcommand(1);

  greenexp::RunConfig cfg;
  auto add_spec_flags = [&](CLI::App* cmd) {
    cmd->add_option("--spec", cfg.spec_path, "coefficient spec file");
    cmd->add_option("--preset", cfg.preset_name,
                    "built-in coefficient preset (identity, anisotropic-linear, "
                    "diagonal-quadratic, anisotropic-linear-3d)");
  };
  auto add_point_flags = [&](CLI::App* cmd) {
    cmd->add_option("--y", cfg.y_csv, "base point, comma-separated coordinates");
    cmd->add_option("--l", cfg.order, "expansion order");
  };
  auto add_grid_flags = [&](CLI::App* cmd) {
    cmd->add_option("--grid", cfg.grid, "grid resolution along the longest extent (>= 33)");
    cmd->add_option("--tol", cfg.tol, "iterative solver tolerance (default: direct solve)");
  };
  auto add_out_flag = [&](CLI::App* cmd) {
    cmd->add_option("--out", cfg.out_dir, "output directory for artifacts");
  };

  auto* expand = app.add_subcommand("expand", "print and export the symbolic expansion");
  add_spec_flags(expand);
  add_point_flags(expand);
  add_out_flag(expand);
  expand->add_option("--backend", cfg.backend, "scalar backend: exact | float");

  auto* green = app.add_subcommand("green", "solve for the Green's function on a grid");
  add_spec_flags(green);
  add_point_flags(green);
  add_grid_flags(green);
  add_out_flag(green);

  auto* robin = app.add_subcommand("robin", "scan Robin's function over base points");
  add_spec_flags(robin);
  add_point_flags(robin);
  add_grid_flags(robin);
  add_out_flag(robin);

  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--suite", cfg.suite, "all | symbolic | numeric | disk-identity");
  add_out_flag(verify);

  app.add_subcommand("selftest", "quick internal consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  return greenexp::run(cfg);
}
