#include "mhd/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "mhd/flux.hpp"

namespace mhd {

double compute_dt(const FieldArray& field, double cfl, double gamma) {
  if (!(cfl > 0.0)) throw std::invalid_argument("compute_dt: cfl must be positive");
  const Grid& g = field.grid;
  double sum = 0.0;
  for (int d = 0; d < g.dims; ++d) sum += global_alpha(field, d, gamma) / g.dx[d];
  if (!(sum > 0.0) || !std::isfinite(sum))
    throw SolverError("compute_dt: zero or non-finite wave speed", 0.0, -1);
  return cfl / sum;
}

double min_density(const FieldArray& f) {
  const Grid& g = f.grid;
  double m = std::numeric_limits<double>::infinity();
  const double* rho = f.data(IRHO);
  for (int k = g.ibeg(2); k < g.iend(2); ++k)
    for (int j = g.ibeg(1); j < g.iend(1); ++j)
      for (int i = g.ibeg(0); i < g.iend(0); ++i) m = std::min(m, rho[g.index(i, j, k)]);
  return m;
}

double min_pressure(const FieldArray& f, double gamma) {
  const Grid& g = f.grid;
  double m = std::numeric_limits<double>::infinity();
  for (int k = g.ibeg(2); k < g.iend(2); ++k)
    for (int j = g.ibeg(1); j < g.iend(1); ++j)
      for (int i = g.ibeg(0); i < g.iend(0); ++i)
        m = std::min(m, pressure(f.get(g.index(i, j, k)), gamma));
  return m;
}

double total_energy(const FieldArray& f) {
  const Grid& g = f.grid;
  double sum = 0.0;
  const double* e = f.data(IEN);
  for (int k = g.ibeg(2); k < g.iend(2); ++k)
    for (int j = g.ibeg(1); j < g.iend(1); ++j)
      for (int i = g.ibeg(0); i < g.iend(0); ++i) sum += e[g.index(i, j, k)];
  return sum * g.cell_volume();
}

bool all_finite(const FieldArray& f) {
  const Grid& g = f.grid;
  for (int c = 0; c < kNumComp; ++c) {
    const double* v = f.data(c);
    for (int k = g.ibeg(2); k < g.iend(2); ++k)
      for (int j = g.ibeg(1); j < g.iend(1); ++j)
        for (int i = g.ibeg(0); i < g.iend(0); ++i)
          if (!std::isfinite(v[g.index(i, j, k)])) return false;
  }
  return true;
}

namespace {

using FluxSet = std::array<InterfaceField, 3>;

FluxSet build_high_fluxes(const FieldArray& q, const std::array<double, 3>& alpha,
                          double gamma) {
  FluxSet F;
  for (int d = 0; d < q.grid.dims; ++d) F[d] = build_interface_fluxes(q, d, alpha[d], gamma);
  return F;
}

std::array<double, 3> alphas_of(const FieldArray& q, double gamma) {
  std::array<double, 3> a{0, 0, 0};
  for (int d = 0; d < q.grid.dims; ++d) a[d] = global_alpha(q, d, gamma);
  return a;
}

// q_out = q_n - sum_d dt/dx_d (F_d,+ - F_d,-) over the interior
FieldArray conservative_update(const FieldArray& qn, const FluxSet& F, double dt) {
  const Grid& g = qn.grid;
  FieldArray out = qn;
  const int n0 = g.active(0) ? g.n[0] : 1;
  const int n1 = g.active(1) ? g.n[1] : 1;
  const int n2 = g.active(2) ? g.n[2] : 1;
  for (int d = 0; d < g.dims; ++d) {
    const double lam = dt / g.dx[d];
    for (int c = 0; c < kNumComp; ++c) {
      double* v = out.data(c);
      const double* f = F[d].comp[c].data();
#pragma omp parallel for collapse(2) schedule(static)
      for (int ck = 0; ck < n2; ++ck)
        for (int cj = 0; cj < n1; ++cj)
          for (int ci = 0; ci < n0; ++ci) {
            int fp[3] = {ci, cj, ck};
            fp[d] += 1;
            v[g.index(g.ibeg(0) + ci, g.ibeg(1) + cj, g.ibeg(2) + ck)] -=
                lam * (f[F[d].index(fp[0], fp[1], fp[2])] - f[F[d].index(ci, cj, ck)]);
          }
    }
  }
  return out;
}

FluxSet combine_fluxes(const Grid& g, const FluxSet& a, double wa, const FluxSet& b, double wb,
                       const FluxSet* c = nullptr, double wc = 0.0) {
  FluxSet out;
  for (int d = 0; d < g.dims; ++d) {
    out[d] = InterfaceField::make(g, d);
    const std::size_t n = out[d].size();
    for (int comp = 0; comp < kNumComp; ++comp) {
      double* o = out[d].comp[comp].data();
      const double* pa = a[d].comp[comp].data();
      const double* pb = b[d].comp[comp].data();
      const double* pc = c ? (*c)[d].comp[comp].data() : nullptr;
      if (pc)
        for (std::size_t i = 0; i < n; ++i) o[i] = wa * pa[i] + wb * pb[i] + wc * pc[i];
      else
        for (std::size_t i = 0; i < n; ++i) o[i] = wa * pa[i] + wb * pb[i];
    }
  }
  return out;
}

}  // namespace

FieldArray Stepper::step(const FieldArray& field_n, double t, double dt, StepDiagnostics* diag) {
  const Grid& g = field_n.grid;
  const double gamma = params_.gamma;
  LimiterStats stats;

  FieldArray qn = field_n;
  fill_ghost(qn, bc_, t);
  const std::array<double, 3> alpha_n = alphas_of(qn, gamma);
  const FluxSet Fn = build_high_fluxes(qn, alpha_n, gamma);

  // the stage-1 low-order solve doubles as the final-stage one (same state, dt)
  std::optional<LowOrderSolve> low_n;
  if (params_.limiter) low_n.emplace(low_order_solution(qn, dt, gamma, params_.eps0, &alpha_n));

  FieldArray q1 = [&] {
    if (params_.limiter && params_.per_stage_limiting) {
      const FluxSet lim = limit_fluxes(Fn, *low_n, qn, dt, gamma, bc_.kind, nullptr);
      return conservative_update(qn, lim, dt);
    }
    return conservative_update(qn, Fn, dt);
  }();
  fill_ghost(q1, bc_, t + dt);
  const std::array<double, 3> alpha_1 = alphas_of(q1, gamma);
  const FluxSet F1 = build_high_fluxes(q1, alpha_1, gamma);

  FieldArray q2 = [&] {
    const FluxSet favg = combine_fluxes(g, Fn, 0.5, F1, 0.5);
    if (params_.limiter && params_.per_stage_limiting) {
      const LowOrderSolve low2 =
          low_order_solution(qn, 0.5 * dt, gamma, params_.eps0, &alpha_n);
      const FluxSet lim = limit_fluxes(favg, low2, qn, 0.5 * dt, gamma, bc_.kind, nullptr);
      return conservative_update(qn, lim, 0.5 * dt);
    }
    return conservative_update(qn, favg, 0.5 * dt);
  }();
  fill_ghost(q2, bc_, t + 0.5 * dt);
  const std::array<double, 3> alpha_2 = alphas_of(q2, gamma);
  const FluxSet F2 = build_high_fluxes(q2, alpha_2, gamma);

  const FluxSet Frk = combine_fluxes(g, Fn, 1.0 / 6.0, F2, 4.0 / 6.0, &F1, 1.0 / 6.0);

  FieldArray qnew = [&] {
    if (params_.limiter) {
      const FluxSet lim = limit_fluxes(Frk, *low_n, qn, dt, gamma, bc_.kind, &stats);
      return conservative_update(qn, lim, dt);
    }
    return conservative_update(qn, Frk, dt);
  }();

  if (potential_) {
    evolve_potential(*potential_, {&qn, &q1, &q2}, {alpha_n, alpha_1, alpha_2}, dt, bc_,
                     {t, t + dt, t + 0.5 * dt}, g.dims == 3 ? params_.ct.resistivity_coeff : 0.0,
                     gamma);
    if (params_.ct.enabled) {
      fill_ghost_potential(*potential_, bc_, t + dt);
      correct_step(qnew, *potential_, params_.ct, gamma);
    }
  }

  if (!all_finite(qnew))
    throw SolverError("non-finite state after update", t + dt, -1);

  if (diag) {
    diag->min_theta = params_.limiter ? stats.min_theta : 1.0;
    diag->limited_interfaces = params_.limiter ? stats.limited_interfaces : 0;
    diag->eps_rho = params_.limiter ? low_n->eps.eps_rho : 0.0;
    diag->eps_p = params_.limiter ? low_n->eps.eps_p : 0.0;
  }
  return qnew;
}

AdvanceResult advance_to(FieldArray field, double t0, double t_final, Stepper& stepper,
                         const AdvanceOptions& opts) {
  if (t_final < t0) throw std::invalid_argument("advance_to: t_final < t0");
  AdvanceResult res{std::move(field), {}};
  const RunParams& p = stepper.params();
  double t = t0;
  const double e0 = total_energy(res.field);
  const double tiny = 1e-14 * std::max(1.0, std::abs(t_final));

  if (opts.on_frame) opts.on_frame(res.field, stepper.potential(), t);
  double last_frame_t = t;

  double next_dump = (opts.dump_interval > 0.0) ? t0 + opts.dump_interval : t_final;
  long step = 0;
  while (t < t_final - tiny) {
    StepDiagnostics sd;
    double dt = 0.0;
    try {
      dt = compute_dt(res.field, p.cfl, p.gamma);
      dt = std::min(dt, t_final - t);
      if (opts.dump_interval > 0.0) dt = std::min(dt, next_dump - t);
      if (!(dt > 0.0) || !std::isfinite(dt))
        throw SolverError("invalid time step", t, step);
      if (dt < 1e-10 * (t_final - t0))
        throw SolverError("time step collapsed", t, step);
      res.field = stepper.step(res.field, t, dt, &sd);
    } catch (const SolverError& e) {
      if (!opts.catch_abort) throw;
      res.aborted = true;
      res.abort_reason = e.what();
      res.abort_time = t;
      return res;
    } catch (const std::runtime_error& e) {
      if (!opts.catch_abort) throw SolverError(e.what(), t, step);
      res.aborted = true;
      res.abort_reason = e.what();
      res.abort_time = t;
      return res;
    }
    t += dt;
    ++step;
    if (step > opts.max_steps) throw SolverError("step limit exceeded", t, step);

    DiagnosticsRecord rec;
    rec.time = t;
    rec.dt = dt;
    rec.min_rho = min_density(res.field);
    rec.min_p = min_pressure(res.field, p.gamma);
    rec.total_energy = total_energy(res.field);
    rec.energy_drift = (e0 != 0.0) ? (rec.total_energy - e0) / std::abs(e0) : 0.0;
    rec.min_theta = sd.min_theta;
    rec.limited_interfaces = sd.limited_interfaces;
    rec.eps_rho = sd.eps_rho;
    rec.eps_p = sd.eps_p;
    if (opts.record_divergence && res.field.grid.dims >= 2) {
      if (!p.ct.enabled) {
        // without CT the B ghosts are stale stage values; refresh them
        fill_ghost(res.field, stepper.boundary(), t);
      }
      rec.div_l1 = divergence_error(res.field);
    }
    res.series.push_back(rec);
    if (opts.stop_on_negative && (!(rec.min_rho > 0.0) || !(rec.min_p > 0.0))) return res;

    if (opts.dump_interval > 0.0 && t >= next_dump - tiny) {
      if (opts.on_frame) {
        opts.on_frame(res.field, stepper.potential(), t);
        last_frame_t = t;
      }
      next_dump += opts.dump_interval;
    }
  }
  if (opts.on_frame && t > last_frame_t + tiny)
    opts.on_frame(res.field, stepper.potential(), t);
  return res;
}

}  // namespace mhd
