#ifndef MHD_CT_HPP_
#define MHD_CT_HPP_

#include "mhd/state.hpp"

namespace mhd {

// Magnetic potential collocated with the grid: scalar A_z in 2D (stored in
// a[0]), the full 3-component vector field in 3D.
struct MagneticPotential {
  Grid grid;
  int ncomp = 1;
  std::array<std::vector<double>, 3> a;

  static MagneticPotential make(const Grid& g) {
    MagneticPotential A;
    A.grid = g;
    A.ncomp = (g.dims == 3) ? 3 : 1;
    for (int c = 0; c < A.ncomp; ++c) A.a[c].assign(g.size(), 0.0);
    return A;
  }
};

struct CtOptions {
  bool enabled = false;
  int energy_option = 2;            // 1: conserve total energy, 2: keep pressure
  double resistivity_coeff = 0.05;  // 3D potential stabilization, scaled by alpha*dx
};

void fill_ghost_potential(MagneticPotential& A, const Boundary& bc, double t);

// Single right-hand-side evaluation of the potential advection at one RK
// stage; velocities come from the given MHD stage state (ghost-filled).
// 2D: dAz/dt = -(ux dAz/dx + uy dAz/dy).
// 3D: non-conservative products of (curl A) x u, discretized term-by-term with
//     upwind WENO derivatives biased by the sign of each term's coefficient,
//     plus artificial resistivity resist_coeff * alpha_d * dx_d * Laplacian_d.
// A must be ghost-filled. Result arrays are full-size, interior entries set.
std::array<std::vector<double>, 3> potential_rhs(const MagneticPotential& A,
                                                 const FieldArray& stage_state,
                                                 const std::array<double, 3>& stage_alpha,
                                                 double resist_coeff, double gamma);

// One SSP-RK3 step of the potential using the three MHD stage states for the
// per-stage velocities. stage_times are the ghost-fill times (t, t+dt, t+dt/2).
void evolve_potential(MagneticPotential& A, const std::array<const FieldArray*, 3>& stages,
                      const std::array<std::array<double, 3>, 3>& stage_alphas, double dt,
                      const Boundary& bc, const std::array<double, 3>& stage_times,
                      double resist_coeff, double gamma);

// Fourth-order central curl. Values are produced on the interior plus `pad`
// ghost layers per active axis (pad <= ghost-2), so a later divergence over
// the interior sees curl-consistent neighbor values. 2D: returns
// (dAz/dy, -dAz/dx, 0); the third component is not meaningful there.
std::array<std::vector<double>, 3> curl(const MagneticPotential& A, int pad = 0);

// L1 norm (cell-volume weighted) of the fourth-order central divergence of B
// over the interior. Ghost layers of the B components must be filled with the
// same rule used when they were produced.
double divergence_error(const FieldArray& field);

// CT correction: replace B by the discrete curl of A (interior plus two ghost
// layers, keeping the later divergence measurement exact), then adjust the
// energy. Option 1 keeps E; option 2 keeps the pressure:
//   E += 1/2 (|B_new|^2 - |B_old|^2).
// In 2D only (Bx, By) are replaced; Bz passes through.
void correct_step(FieldArray& state, const MagneticPotential& A, const CtOptions& opts,
                  double gamma);

}  // namespace mhd

#endif  // MHD_CT_HPP_
