#ifndef MHD_STATE_HPP_
#define MHD_STATE_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace mhd {

constexpr int kNumComp = 8;

// Component slots of the conserved 8-vector.
enum Comp : int { IRHO = 0, IMX = 1, IMY = 2, IMZ = 3, IEN = 4, IBX = 5, IBY = 6, IBZ = 7 };

using State8 = std::array<double, 8>;

struct ConservedState {
  double rho = 0.0;
  std::array<double, 3> mom{0.0, 0.0, 0.0};
  double energy = 0.0;
  std::array<double, 3> b{0.0, 0.0, 0.0};

  State8 to_array() const {
    return {rho, mom[0], mom[1], mom[2], energy, b[0], b[1], b[2]};
  }
  static ConservedState from_array(const State8& q) {
    return {q[IRHO], {q[IMX], q[IMY], q[IMZ]}, q[IEN], {q[IBX], q[IBY], q[IBZ]}};
  }
};

struct PrimitiveState {
  double rho = 0.0;
  std::array<double, 3> u{0.0, 0.0, 0.0};
  double p = 0.0;
  std::array<double, 3> b{0.0, 0.0, 0.0};
};

// Hydrodynamic pressure of a conserved state; may be negative, callers decide.
double pressure(const ConservedState& q, double gamma);
double pressure(const State8& q, double gamma);

PrimitiveState to_primitive(const ConservedState& q, double gamma);
ConservedState to_conserved(const PrimitiveState& w, double gamma);

// rho > 0 and p > 0 up to a denormal guard.
bool admissible(const ConservedState& q, double gamma);

// Uniform structured grid, point values at cell centers, fixed ghost width.
struct Grid {
  int dims = 1;
  std::array<int, 3> n{1, 1, 1};
  std::array<double, 3> lo{0.0, 0.0, 0.0};
  std::array<double, 3> hi{1.0, 1.0, 1.0};
  int ghost = 4;
  std::array<double, 3> dx{1.0, 1.0, 1.0};

  static Grid make(int dims, std::array<int, 3> n, std::array<double, 3> lo,
                   std::array<double, 3> hi, int ghost = 4);

  bool active(int a) const { return a < dims; }
  int ext(int a) const { return active(a) ? n[a] + 2 * ghost : 1; }
  int ibeg(int a) const { return active(a) ? ghost : 0; }
  int iend(int a) const { return ibeg(a) + (active(a) ? n[a] : 1); }
  std::size_t size() const {
    return static_cast<std::size_t>(ext(0)) * ext(1) * ext(2);
  }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * ext(1) + j) * ext(0) + i;
  }
  std::size_t stride(int a) const {
    if (a == 0) return 1;
    if (a == 1) return static_cast<std::size_t>(ext(0));
    return static_cast<std::size_t>(ext(0)) * ext(1);
  }
  // Physical coordinate of grid point `idx` (extended indexing) along axis a.
  double pos(int a, int idx) const {
    return lo[a] + (idx - ibeg(a) + 0.5) * dx[a];
  }
  double cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dims; ++a) v *= dx[a];
    return v;
  }
};

// Structure-of-arrays field of conserved states over a grid with ghosts.
struct FieldArray {
  Grid grid;
  std::array<std::vector<double>, kNumComp> comp;

  explicit FieldArray(const Grid& g) : grid(g) {
    for (auto& c : comp) c.assign(grid.size(), 0.0);
  }

  double* data(int c) { return comp[c].data(); }
  const double* data(int c) const { return comp[c].data(); }

  State8 get(std::size_t idx) const {
    State8 q;
    for (int c = 0; c < kNumComp; ++c) q[c] = comp[c][idx];
    return q;
  }
  void set(std::size_t idx, const State8& q) {
    for (int c = 0; c < kNumComp; ++c) comp[c][idx] = q[c];
  }
};

// Single scalar over the same layout (potential components, diagnostics).
struct ScalarField {
  Grid grid;
  std::vector<double> v;
  explicit ScalarField(const Grid& g) : grid(g), v(g.size(), 0.0) {}
};

enum class BcKind { Periodic, ZeroOrder, Custom };

struct MagneticPotential;  // defined in ct.hpp

// Per-axis/per-side boundary rules. Custom sides are filled by the callbacks
// after the standard passes; a callback must set every ghost point on its sides.
struct Boundary {
  std::array<std::array<BcKind, 2>, 3> kind{{{BcKind::Periodic, BcKind::Periodic},
                                             {BcKind::Periodic, BcKind::Periodic},
                                             {BcKind::Periodic, BcKind::Periodic}}};
  std::function<void(FieldArray&, double)> custom_state;
  std::function<void(MagneticPotential&, double)> custom_potential;

  bool has_custom() const {
    for (int a = 0; a < 3; ++a)
      for (int s = 0; s < 2; ++s)
        if (kind[a][s] == BcKind::Custom) return true;
    return false;
  }
};

void fill_ghost(FieldArray& f, const Boundary& bc, double t);
void fill_ghost_scalar(ScalarField& f, const std::array<std::array<BcKind, 2>, 3>& kind);

}  // namespace mhd

#endif  // MHD_STATE_HPP_
