#ifndef MHD_INTEGRATOR_HPP_
#define MHD_INTEGRATOR_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mhd/ct.hpp"
#include "mhd/limiter.hpp"

namespace mhd {

// Unrecoverable solver failure (positivity loss in the low-order scheme,
// non-finite state, timestep collapse).
struct SolverError : std::runtime_error {
  double time = 0.0;
  long step = -1;
  SolverError(const std::string& what, double t, long s)
      : std::runtime_error(what), time(t), step(s) {}
};

struct RunParams {
  double gamma = 5.0 / 3.0;
  double cfl = 0.5;
  bool limiter = true;
  bool per_stage_limiting = false;
  double eps0 = 1e-13;
  CtOptions ct;
};

// CFL timestep: dt = cfl / sum_d(alpha_d / dx_d). Landing on t_final and
// output times is the caller's clipping.
double compute_dt(const FieldArray& field, double cfl, double gamma);

struct StepDiagnostics {
  double min_theta = 1.0;
  long limited_interfaces = 0;
  double eps_rho = 0.0;  // limiter floors used this step (0 when limiter off)
  double eps_p = 0.0;
};

// One SSP-RK3 step of the MHD field, with end-of-step combined-flux limiting
// and (when enabled) the constrained-transport correction, the magnetic
// potential advancing in lock-step through the same stages.
class Stepper {
 public:
  Stepper(const RunParams& params, const Boundary& bc) : params_(params), bc_(bc) {}

  void attach_potential(const MagneticPotential& A) { potential_ = A; }
  const MagneticPotential* potential() const {
    return potential_ ? &*potential_ : nullptr;
  }
  const RunParams& params() const { return params_; }
  const Boundary& boundary() const { return bc_; }

  FieldArray step(const FieldArray& field_n, double t, double dt,
                  StepDiagnostics* diag = nullptr);

 private:
  RunParams params_;
  Boundary bc_;
  std::optional<MagneticPotential> potential_;
};

struct DiagnosticsRecord {
  double time = 0.0;
  double dt = 0.0;
  double min_rho = 0.0;
  double min_p = 0.0;
  double div_l1 = 0.0;
  double total_energy = 0.0;
  double energy_drift = 0.0;  // relative to the initial total
  double min_theta = 1.0;
  long limited_interfaces = 0;
  double eps_rho = 0.0;
  double eps_p = 0.0;
};

struct AdvanceOptions {
  double dump_interval = 0.0;  // 0: initial and final frames only
  long max_steps = 100000000;
  std::function<void(const FieldArray&, const MagneticPotential*, double)> on_frame;
  bool record_divergence = true;
  // keep the diagnostics recorded so far instead of propagating SolverError
  bool catch_abort = false;
  // stop once a step-level negative density or pressure is recorded
  bool stop_on_negative = false;
};

struct AdvanceResult {
  FieldArray field;
  std::vector<DiagnosticsRecord> series;
  bool aborted = false;
  std::string abort_reason;
  double abort_time = 0.0;
};

// Repeated RK3 steps from t0 to t_final with CFL-based dt clipped to land
// exactly on t_final and on every dump time; one diagnostics record per step.
AdvanceResult advance_to(FieldArray field, double t0, double t_final, Stepper& stepper,
                         const AdvanceOptions& opts = {});

// Interior minima and totals used by the diagnostics.
double min_density(const FieldArray& f);
double min_pressure(const FieldArray& f, double gamma);
double total_energy(const FieldArray& f);
bool all_finite(const FieldArray& f);

}  // namespace mhd

#endif  // MHD_INTEGRATOR_HPP_
