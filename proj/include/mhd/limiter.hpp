#ifndef MHD_LIMITER_HPP_
#define MHD_LIMITER_HPP_

#include <utility>

#include "mhd/weno.hpp"

namespace mhd {

// Numerical lower bounds for density and pressure, derived from the low-order
// positivity-preserving solve.
struct EpsilonBounds {
  double eps_rho = 1e-13;
  double eps_p = 1e-13;
  double eps0 = 1e-13;
};

// First-order global Lax-Friedrichs flux.
State8 lf_flux(const State8& qL, const State8& qR, int dir, double alpha, double gamma);

// Lax-Friedrichs interface fluxes over the whole grid for one axis.
InterfaceField build_lf_fluxes(const FieldArray& field, int axis, double alpha, double gamma);

struct LowOrderSolve {
  FieldArray qhat;
  EpsilonBounds eps;
  std::array<InterfaceField, 3> flux;  // per active axis
};

// One forward-Euler Lax-Friedrichs step (all directions summed) from `field`,
// plus the epsilon bounds taken over the resulting interior density/pressure.
// Throws if the low-order solution itself loses positivity (CFL violation or
// the untreated multi-D edge case).
// `alphas`, when given, supplies per-axis LF coefficients; otherwise they are
// recomputed from the field.
LowOrderSolve low_order_solution(const FieldArray& field, double dt, double gamma,
                                 double eps0 = 1e-13,
                                 const std::array<double, 3>* alphas = nullptr);

// Density step of the parametrized limiter, 1D case table.
// lamF_* = lambda * (high-order minus low-order density flux) at the cell's
// two interfaces. Any (theta-,theta+) within the returned box keeps
// Gamma - (theta+ * lamF_plus - theta- * lamF_minus) >= eps_rho.
std::pair<double, double> density_bounds_1d(double Gamma, double lamF_minus, double lamF_plus,
                                            double eps_rho);

// Blend factor r in [0,1] such that p(r*q_vertex + (1-r)*q_low) >= eps_p,
// found by at most ten bisection iterations, returning the safe endpoint.
// Requires p(q_low) >= eps_p.
double pressure_rescale_vertex(const State8& q_vertex, const State8& q_low, double eps_p,
                               double gamma);

// Per-cell admissible ranges. Interface sides are ordered
// (d=0,minus),(d=0,plus),(d=1,minus),... for d < dims.
struct CellBounds {
  std::array<double, 6> lam_density{1, 1, 1, 1, 1, 1};
  std::array<double, 6> lam_final{1, 1, 1, 1, 1, 1};
};

// lam_dF[s] = lambda_d * (high minus low interface flux), full 8-vectors.
// q_low is the low-order update of this cell (density entry is Gamma).
CellBounds cell_bounds(const State8& q_low, const std::array<State8, 6>& lam_dF, int dims,
                       const EpsilonBounds& eps, double gamma);

struct LimiterStats {
  double min_theta = 1.0;
  long limited_interfaces = 0;
};

// Parametrized flux limiting: returns modified fluxes
//   F~ = theta (F_high - f_low) + f_low
// with per-interface theta = min of the adjacent cells' admissible bounds, so
// the conservative update of field_n with F~ satisfies rho >= eps_rho and
// p >= eps_p at every interior point. Periodic axes couple the wrap-around
// interface pair so both copies carry the same theta.
std::array<InterfaceField, 3> limit_fluxes(const std::array<InterfaceField, 3>& high,
                                           const LowOrderSolve& low, const FieldArray& field_n,
                                           double dt, double gamma,
                                           const std::array<std::array<BcKind, 2>, 3>& bc_kind,
                                           LimiterStats* stats = nullptr);

// The shared low-order cell update; limit_fluxes and low_order_solution use
// this exact arithmetic so the epsilon bounds transfer bit-for-bit.
State8 low_order_cell_update(const FieldArray& field, const std::array<InterfaceField, 3>& lf,
                             const std::array<double, 3>& lam, int dims, int ci, int cj, int ck);

}  // namespace mhd

#endif  // MHD_LIMITER_HPP_
