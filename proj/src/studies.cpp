#include "mhd/studies.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace mhd {

int run_problem(const RunConfig& cfg, std::ostream& log) {
  RunConfig::Resolved r;
  try {
    r = cfg.resolve();
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return 3;
  }

  std::filesystem::create_directories(cfg.out_dir);
  const Grid grid = r.spec.make_grid(r.mesh);
  FieldArray field = r.spec.make_initial_field(grid);

  Stepper stepper(r.params, r.spec.boundary);
  if (r.ct_on) stepper.attach_potential(r.spec.make_initial_potential(grid));

  AdvanceOptions opts;
  opts.dump_interval = cfg.dump_interval;
  opts.catch_abort = true;
  int frame = 0;
  opts.on_frame = [&](const FieldArray& f, const MagneticPotential*, double t) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%06d.txt", frame++);
    write_frame_file(f, t, cfg.gamma, cfg.out_dir + "/" + name);
  };

  AdvanceResult res = advance_to(std::move(field), 0.0, r.t_final, stepper, opts);
  write_diagnostics_file(res.series, cfg.out_dir + "/diagnostics.csv");
  if (res.aborted) {
    log << "solver abort at t = " << res.abort_time << ": " << res.abort_reason << "\n";
    return 2;
  }
  log << "completed " << cfg.problem << " to t = " << r.t_final << " (" << res.series.size()
      << " steps)\n";
  return 0;
}

ConvergenceTable convergence_study(const std::vector<int>& meshes, bool limiter, double cfl,
                                   std::ostream* log) {
  ConvergenceTable table;
  table.meshes = meshes;

  for (int n : meshes) {
    ProblemSpec spec = smooth_vortex_2d();
    const Grid grid = spec.make_grid({n, n, 1});
    FieldArray field = spec.make_initial_field(grid);

    RunParams params;
    params.cfl = cfl;
    params.limiter = limiter;
    params.ct.enabled = true;
    params.ct.energy_option = 2;
    Stepper stepper(params, spec.boundary);
    stepper.attach_potential(spec.make_initial_potential(grid));

    AdvanceOptions opts;
    opts.record_divergence = false;
    AdvanceResult res = advance_to(std::move(field), 0.0, spec.t_final, stepper, opts);

    // exact solution: the initial condition advected by the mean flow
    const double t = spec.t_final;
    std::array<double, 4> l1{0, 0, 0, 0}, linf{0, 0, 0, 0};
    for (int j = grid.ibeg(1); j < grid.iend(1); ++j)
      for (int i = grid.ibeg(0); i < grid.iend(0); ++i) {
        const double x = grid.pos(0, i), y = grid.pos(1, j);
        const PrimitiveState ex = vortex_primitive(x - t, y - t);
        const State8 q = res.field.get(grid.index(i, j, grid.ibeg(2)));
        const double vals[4] = {q[IMX] / q[IRHO], q[IMY] / q[IRHO], q[IBX], q[IBY]};
        const double ref[4] = {ex.u[0], ex.u[1], ex.b[0], ex.b[1]};
        for (int c = 0; c < 4; ++c) {
          const double e = std::abs(vals[c] - ref[c]);
          l1[c] += e;
          linf[c] = std::max(linf[c], e);
        }
      }
    const double cellvol = grid.cell_volume();
    for (int c = 0; c < 4; ++c) {
      table.l1[c].push_back(l1[c] * cellvol);
      table.linf[c].push_back(linf[c]);
    }
    if (log)
      *log << "vortex " << n << "x" << n << ": L1(ux) = " << table.l1[0].back() << "\n";
  }

  bool doubling = meshes.size() >= 2;
  for (std::size_t m = 1; m < meshes.size(); ++m)
    if (meshes[m] != 2 * meshes[m - 1]) doubling = false;
  if (doubling) {
    for (int c = 0; c < 4; ++c)
      for (std::size_t m = 1; m < meshes.size(); ++m) {
        table.l1_order[c].push_back(std::log2(table.l1[c][m - 1] / table.l1[c][m]));
        table.linf_order[c].push_back(std::log2(table.linf[c][m - 1] / table.linf[c][m]));
      }
  }
  return table;
}

void print_convergence(const ConvergenceTable& t, std::ostream& os) {
  os << "# smooth vortex accuracy, L1 = grid sum * cell volume\n";
  for (int c = 0; c < 4; ++c) {
    os << "# " << ConvergenceTable::quantity_names[c] << "\n";
    os << std::setw(8) << "mesh" << std::setw(14) << "L1" << std::setw(8) << "order"
       << std::setw(14) << "Linf" << std::setw(8) << "order" << "\n";
    for (std::size_t m = 0; m < t.meshes.size(); ++m) {
      os << std::setw(8) << t.meshes[m] << std::scientific << std::setprecision(2)
         << std::setw(14) << t.l1[c][m];
      if (m > 0 && !t.l1_order[c].empty())
        os << std::fixed << std::setprecision(2) << std::setw(8) << t.l1_order[c][m - 1];
      else
        os << std::setw(8) << "-";
      os << std::scientific << std::setprecision(2) << std::setw(14) << t.linf[c][m];
      if (m > 0 && !t.linf_order[c].empty())
        os << std::fixed << std::setprecision(2) << std::setw(8) << t.linf_order[c][m - 1];
      else
        os << std::setw(8) << "-";
      os << "\n";
    }
  }
  os.unsetf(std::ios::floatfield);
}

const SchemeComparison::Row& SchemeComparison::row(const std::string& scheme) const {
  for (const auto& r : rows)
    if (r.scheme == scheme) return r;
  throw std::out_of_range("no such scheme row: " + scheme);
}

SchemeComparison compare_schemes(int mesh, double t_final, std::ostream* log) {
  struct Config {
    const char* name;
    bool limiter, ct;
    int option;
  };
  const Config configs[4] = {{"WENO-HCL", false, false, 2},
                             {"WENO-CT-OP1", false, true, 1},
                             {"WENO-CT-OP2", false, true, 2},
                             {"PP-WENO-CT-OP2", true, true, 2}};

  SchemeComparison out;
  out.mesh = mesh;
  for (const auto& c : configs) {
    ProblemSpec spec = blast_2d();
    const Grid grid = spec.make_grid({mesh, mesh, 1});
    FieldArray field = spec.make_initial_field(grid);

    RunParams params;
    params.limiter = c.limiter;
    params.ct.enabled = c.ct;
    params.ct.energy_option = c.option;
    Stepper stepper(params, spec.boundary);
    if (c.ct) stepper.attach_potential(spec.make_initial_potential(grid));

    AdvanceOptions opts;
    opts.catch_abort = true;
    opts.record_divergence = false;
    AdvanceResult res = advance_to(std::move(field), 0.0, t_final, stepper, opts);

    bool positive = true;
    for (const auto& rec : res.series)
      if (!(rec.min_rho > 0.0) || !(rec.min_p > 0.0)) positive = false;
    out.rows.push_back({c.name, positive, !res.aborted});
    if (log)
      *log << c.name << " @ " << mesh << "^2: positivity " << (positive ? "Yes" : "No")
           << ", stability " << (!res.aborted ? "Yes" : "No")
           << (res.aborted ? " (" + res.abort_reason + ")" : "") << "\n";
  }
  return out;
}

void print_comparison(const SchemeComparison& c, std::ostream& os) {
  os << "# 2D blast scheme comparison, mesh " << c.mesh << "x" << c.mesh
     << " (positivity checked at each accepted step)\n";
  os << std::setw(18) << "scheme" << std::setw(12) << "positivity" << std::setw(12)
     << "stability" << "\n";
  for (const auto& r : c.rows)
    os << std::setw(18) << r.scheme << std::setw(12) << (r.positivity ? "Yes" : "No")
       << std::setw(12) << (r.stability ? "Yes" : "No") << "\n";
}

}  // namespace mhd
