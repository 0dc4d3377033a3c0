#include "mhd/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mhd {

RunConfig::Resolved RunConfig::resolve() const {
  Resolved r;
  try {
    r.spec = problem_by_name(problem);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  r.mesh = r.spec.default_mesh;
  for (int a = 0; a < r.spec.dims; ++a) {
    if (mesh[a] > 0) r.mesh[a] = mesh[a];
    if (r.mesh[a] < 12) throw ConfigError("mesh too small along axis " + std::to_string(a));
  }
  r.t_final = t_final >= 0.0 ? t_final : r.spec.t_final;
  if (!(cfl > 0.0) || cfl > 0.5)
    throw ConfigError("cfl must lie in (0, 0.5] for the positivity-preserving scheme");
  if (energy_option != 1 && energy_option != 2)
    throw ConfigError("energy-option must be 1 or 2");
  if (!(eps0 > 0.0)) throw ConfigError("eps0 must be positive");
  if (!(gamma > 1.0)) throw ConfigError("gamma must exceed 1");
  if (dump_interval < 0.0) throw ConfigError("dump-interval must be nonnegative");
  if (resistivity_coeff < 0.0) throw ConfigError("resistivity-coeff must be nonnegative");

  if (ct == 1 && r.spec.dims == 1)
    throw ConfigError("ct is not available in 1D: the normal field is constant by construction");
  r.ct_on = (ct == -1) ? r.spec.uses_ct : (ct == 1);

  r.params.gamma = gamma;
  r.params.cfl = cfl;
  r.params.limiter = limiter;
  r.params.per_stage_limiting = per_stage_limiting;
  r.params.eps0 = eps0;
  r.params.ct.enabled = r.ct_on;
  r.params.ct.energy_option = energy_option;
  r.params.ct.resistivity_coeff = resistivity_coeff;
  return r;
}

namespace {

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ConfigError("bad boolean for " + key + ": " + v);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& value) {
  try {
    if (key == "problem") cfg.problem = value;
    else if (key == "nx") cfg.mesh[0] = std::stoi(value);
    else if (key == "ny") cfg.mesh[1] = std::stoi(value);
    else if (key == "nz") cfg.mesh[2] = std::stoi(value);
    else if (key == "cfl") cfg.cfl = std::stod(value);
    else if (key == "t-final") cfg.t_final = std::stod(value);
    else if (key == "gamma") cfg.gamma = std::stod(value);
    else if (key == "limiter") cfg.limiter = parse_bool(value, key);
    else if (key == "ct") cfg.ct = parse_bool(value, key) ? 1 : 0;
    else if (key == "energy-option") cfg.energy_option = std::stoi(value);
    else if (key == "per-stage-limiting") cfg.per_stage_limiting = parse_bool(value, key);
    else if (key == "eps0") cfg.eps0 = std::stod(value);
    else if (key == "resistivity-coeff") cfg.resistivity_coeff = std::stod(value);
    else if (key == "dump-interval") cfg.dump_interval = std::stod(value);
    else if (key == "out") cfg.out_dir = value;
    else throw ConfigError("unknown config key: " + key);
  } catch (const std::invalid_argument&) {
    throw ConfigError("bad value for " + key + ": " + value);
  } catch (const std::out_of_range&) {
    throw ConfigError("bad value for " + key + ": " + value);
  }
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    apply_config_line(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

namespace {

void put(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

void write_frame(const FieldArray& f, double t, double gamma, std::ostream& os) {
  const Grid& g = f.grid;
  os << "# time = ";
  put(os, t);
  os << "\n# mesh = " << g.n[0];
  for (int a = 1; a < g.dims; ++a) os << " " << g.n[a];
  os << "\n# gamma = ";
  put(os, gamma);
  os << "\n# columns = x y z rho ux uy uz p bx by bz unorm pmag\n";
  for (int k = g.ibeg(2); k < g.iend(2); ++k)
    for (int j = g.ibeg(1); j < g.iend(1); ++j)
      for (int i = g.ibeg(0); i < g.iend(0); ++i) {
        const State8 q = f.get(g.index(i, j, k));
        const double x = g.pos(0, i);
        const double y = g.dims > 1 ? g.pos(1, j) : 0.0;
        const double z = g.dims > 2 ? g.pos(2, k) : 0.0;
        const double ux = q[IMX] / q[IRHO], uy = q[IMY] / q[IRHO], uz = q[IMZ] / q[IRHO];
        const double p = pressure(q, gamma);
        const double pmag = 0.5 * (q[IBX] * q[IBX] + q[IBY] * q[IBY] + q[IBZ] * q[IBZ]);
        const double un = std::sqrt(ux * ux + uy * uy + uz * uz);
        const double row[13] = {x, y, z, q[IRHO], ux, uy, uz, p, q[IBX], q[IBY], q[IBZ], un, pmag};
        for (int c = 0; c < 13; ++c) {
          if (c) os << ' ';
          put(os, row[c]);
        }
        os << '\n';
      }
}

void write_frame_file(const FieldArray& f, double t, double gamma, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open frame file: " + path);
  write_frame(f, t, gamma, os);
}

void write_diagnostics(const std::vector<DiagnosticsRecord>& series, std::ostream& os) {
  os << "time,dt,min_rho,min_p,div_l1,total_energy,energy_drift,min_theta,limited_interfaces\n";
  for (const auto& r : series) {
    const double row[8] = {r.time,         r.dt,           r.min_rho,  r.min_p,
                           r.div_l1,       r.total_energy, r.energy_drift, r.min_theta};
    for (int c = 0; c < 8; ++c) {
      if (c) os << ',';
      put(os, row[c]);
    }
    os << ',' << r.limited_interfaces << '\n';
  }
}

void write_diagnostics_file(const std::vector<DiagnosticsRecord>& series,
                            const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open diagnostics file: " + path);
  write_diagnostics(series, os);
}

}  // namespace mhd
