#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mhd/studies.hpp"

namespace {

struct CliFlags {
  std::string config_file;
  std::string problem;
  int nx = 0, ny = 0, nz = 0;
  double cfl = -1.0, t_final = -1.0, gamma = -1.0;
  std::string limiter, ct, per_stage;
  int energy_option = 0;
  double eps0 = -1.0, dump_interval = -1.0, resistivity = -1.0;
  std::string out_dir;
};

void add_run_options(CLI::App* cmd, CliFlags& f) {
  cmd->add_option("--config", f.config_file, "config file (key = value lines, # comments)");
  cmd->add_option("--problem", f.problem, "problem name");
  cmd->add_option("--nx", f.nx, "mesh points along x");
  cmd->add_option("--ny", f.ny, "mesh points along y");
  cmd->add_option("--nz", f.nz, "mesh points along z");
  cmd->add_option("--cfl", f.cfl, "CFL number (<= 0.5)");
  cmd->add_option("--t-final", f.t_final, "final time");
  cmd->add_option("--gamma", f.gamma, "adiabatic index");
  cmd->add_option("--limiter", f.limiter, "positivity limiter on|off")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--ct", f.ct, "constrained transport on|off")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--energy-option", f.energy_option, "CT energy correction option 1|2")
      ->check(CLI::IsMember({1, 2}));
  cmd->add_option("--per-stage-limiting", f.per_stage, "apply the limiter at every RK stage")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--eps0", f.eps0, "positivity floor epsilon0");
  cmd->add_option("--resistivity-coeff", f.resistivity, "3D potential resistivity coefficient");
  cmd->add_option("--dump-interval", f.dump_interval, "frame output interval");
  cmd->add_option("--out", f.out_dir, "output directory");
}

mhd::RunConfig build_config(const CliFlags& f) {
  mhd::RunConfig cfg;
  if (!f.config_file.empty()) cfg = mhd::load_config_file(f.config_file, cfg);
  if (!f.problem.empty()) cfg.problem = f.problem;
  if (f.nx > 0) cfg.mesh[0] = f.nx;
  if (f.ny > 0) cfg.mesh[1] = f.ny;
  if (f.nz > 0) cfg.mesh[2] = f.nz;
  if (f.cfl >= 0.0) cfg.cfl = f.cfl;
  if (f.t_final >= 0.0) cfg.t_final = f.t_final;
  if (f.gamma > 0.0) cfg.gamma = f.gamma;
  if (!f.limiter.empty()) cfg.limiter = f.limiter == "on";
  if (!f.ct.empty()) cfg.ct = f.ct == "on" ? 1 : 0;
  if (f.energy_option > 0) cfg.energy_option = f.energy_option;
  if (!f.per_stage.empty()) cfg.per_stage_limiting = f.per_stage == "on";
  if (f.eps0 > 0.0) cfg.eps0 = f.eps0;
  if (f.resistivity >= 0.0) cfg.resistivity_coeff = f.resistivity;
  if (f.dump_interval >= 0.0) cfg.dump_interval = f.dump_interval;
  if (!f.out_dir.empty()) cfg.out_dir = f.out_dir;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite difference WENO solver for ideal MHD with a positivity-preserving "
               "flux limiter and unstaggered constrained transport"};
  app.require_subcommand(1);

  CliFlags rf;
  CLI::App* run = app.add_subcommand("run", "run one problem");
  add_run_options(run, rf);

  CLI::App* conv = app.add_subcommand("converge", "smooth-vortex accuracy study");
  std::vector<int> meshes{40, 80, 160};
  std::string conv_limiter = "on";
  std::string conv_out;
  conv->add_option("--meshes", meshes, "mesh sizes (doubling sequence for orders)");
  conv->add_option("--limiter", conv_limiter, "on|off")->check(CLI::IsMember({"on", "off"}));
  conv->add_option("--out", conv_out, "also write the table to this file");

  CLI::App* comp = app.add_subcommand("compare", "2D blast scheme comparison");
  int comp_mesh = 150;
  double comp_tfinal = 0.01;
  std::string comp_out;
  comp->add_option("--mesh", comp_mesh, "mesh points per axis");
  comp->add_option("--t-final", comp_tfinal, "final time");
  comp->add_option("--out", comp_out, "also write the table to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (run->parsed()) {
      return mhd::run_problem(build_config(rf), std::cout);
    }
    if (conv->parsed()) {
      const auto table = mhd::convergence_study(meshes, conv_limiter == "on", 0.5, &std::cerr);
      mhd::print_convergence(table, std::cout);
      if (!conv_out.empty()) {
        std::ofstream os(conv_out);
        mhd::print_convergence(table, os);
      }
      return 0;
    }
    if (comp->parsed()) {
      const auto table = mhd::compare_schemes(comp_mesh, comp_tfinal, &std::cerr);
      mhd::print_comparison(table, std::cout);
      if (!comp_out.empty()) {
        std::ofstream os(comp_out);
        mhd::print_comparison(table, os);
      }
      return 0;
    }
  } catch (const mhd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 3;
  } catch (const mhd::SolverError& e) {
    std::cerr << "solver abort at t = " << e.time << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
