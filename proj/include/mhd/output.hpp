#ifndef MHD_OUTPUT_HPP_
#define MHD_OUTPUT_HPP_

#include <iosfwd>
#include <string>

#include "mhd/problems.hpp"

namespace mhd {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
  std::string problem = "vacuum-shock-1d";
  std::array<int, 3> mesh{0, 0, 0};  // 0: problem default
  double cfl = 0.5;
  double t_final = -1.0;  // <0: problem default
  double gamma = 5.0 / 3.0;
  bool limiter = true;
  int ct = -1;  // -1 auto (on for multi-D), 0 off, 1 on
  int energy_option = 2;
  bool per_stage_limiting = false;
  double eps0 = 1e-13;
  double resistivity_coeff = 0.05;
  double dump_interval = 0.0;
  std::string out_dir = "out";

  // Resolved view against the problem definition; throws ConfigError on
  // invalid combinations (unknown problem, ct requested for 1D, bad ranges).
  struct Resolved {
    ProblemSpec spec;
    std::array<int, 3> mesh;
    double t_final;
    bool ct_on;
    RunParams params;
  };
  Resolved resolve() const;
};

// key = value lines, '#' comments; unknown keys rejected.
RunConfig load_config_file(const std::string& path, RunConfig base = {});
void apply_config_line(RunConfig& cfg, const std::string& key, const std::string& value);

// Plain-text frame: header lines then one row per interior point with
// coordinates, rho, u, p, B, |u| and the magnetic pressure.
void write_frame(const FieldArray& f, double t, double gamma, std::ostream& os);
void write_frame_file(const FieldArray& f, double t, double gamma, const std::string& path);

// Comma-separated diagnostics series.
void write_diagnostics(const std::vector<DiagnosticsRecord>& series, std::ostream& os);
void write_diagnostics_file(const std::vector<DiagnosticsRecord>& series,
                            const std::string& path);

}  // namespace mhd

#endif  // MHD_OUTPUT_HPP_
