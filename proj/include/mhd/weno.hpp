#ifndef MHD_WENO_HPP_
#define MHD_WENO_HPP_

#include "mhd/state.hpp"

namespace mhd {

enum class WenoBias { Left, Right };

// Fifth-order WENO interface value from five consecutive point values given in
// increasing index order. Left bias reconstructs the interface right of v[2]
// (stencil j-2..j+2 for interface j+1/2); Right bias the interface left of
// v[2] (stencil j-1..j+3 for interface j+1/2, i.e. the mirrored stencil).
double weno5_reconstruct(const double v[5], WenoBias bias);

// Numerical fluxes on faces normal to `axis`. Face index fi in [0, n_axis]
// (face fi sits between interior cells fi-1 and fi); transverse indices run
// over interior cells [0, n).
struct InterfaceField {
  int axis = 0;
  std::array<int, 3> m{1, 1, 1};
  std::array<std::vector<double>, kNumComp> comp;

  static InterfaceField make(const Grid& g, int axis);
  std::size_t size() const {
    return static_cast<std::size_t>(m[0]) * m[1] * m[2];
  }
  std::size_t index(int fi, int fj, int fk) const {
    return (static_cast<std::size_t>(fk) * m[1] + fj) * m[0] + fi;
  }
};

// High-order WENO-HCL interface fluxes: global Lax-Friedrichs splitting with
// coefficient `alpha`, characteristic projection on the 7-wave system at the
// interface-average state, component-wise pass-through of the normal B.
// Ghost layers of `field` must be filled. Throws on non-finite input.
InterfaceField build_interface_fluxes(const FieldArray& field, int axis, double alpha,
                                      double gamma);

// Fifth-order upwind-biased WENO approximation of d(values)/dx_axis at every
// interior point, biased against the wind: wind >= 0 uses the left-biased
// stencil. `windsign` is indexed by the full grid index; only interior entries
// are read. Result is indexed by the full grid index as well.
std::vector<double> scalar_weno_derivative(const ScalarField& values, int axis,
                                           const std::vector<double>& windsign);

// L += -(F_{face+1} - F_{face}) / dx_axis over interior cells.
void accumulate_flux_divergence(const InterfaceField& flux, const Grid& g, FieldArray& L);

}  // namespace mhd

#endif  // MHD_WENO_HPP_
