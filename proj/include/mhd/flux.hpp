#ifndef MHD_FLUX_HPP_
#define MHD_FLUX_HPP_

#include "mhd/state.hpp"

namespace mhd {

// Physical flux of the ideal MHD system along axis `dir` (0,1,2).
// The normal magnetic-field component has identically zero flux.
State8 physical_flux(const State8& q, int dir, double gamma);

// Fast magnetosonic speed along `dir`. Requires rho > 0, p >= 0.
double fast_speed(const PrimitiveState& w, int dir, double gamma);

// max over interior points of |u_dir| + c_f,dir, with |rho|,|p| guards applied
// to the speed evaluation only (intermediate RK stages may carry negative values).
double global_alpha(const FieldArray& field, int dir, double gamma);

// 7-wave eigensystem of the flux Jacobian along one axis, with the normal
// magnetic-field row/column removed. Component ordering of the 7-system:
//   (rho, m_n, m_t1, m_t2, E, B_t1, B_t2) with (n,t1,t2) the cyclic axis triple.
struct EigenSystem {
  std::array<double, 7> lambda{};          // u-cf, u-ca, u-cs, u, u+cs, u+ca, u+cf
  std::array<std::array<double, 7>, 7> left{};   // rows are left eigenvectors
  std::array<std::array<double, 7>, 7> right{};  // columns are right eigenvectors
};

// Eigensystem at the arithmetic-average state of (qL, qR), degeneracy-safe
// normalization, |rho|/|p| guard on the speed and scaling factors.
EigenSystem eigensystem(const State8& qL, const State8& qR, int dir, double gamma);

// Same, for a state already in local (axis-permuted) component ordering.
EigenSystem eigensystem_local(const State8& qm_local, double gamma);

// Cyclic component maps for direction handling: for axis d, perm[0..7] lists
// the global component slot feeding each local slot of the x-form kernel.
std::array<int, 8> axis_permutation(int dir);

}  // namespace mhd

#endif  // MHD_FLUX_HPP_
