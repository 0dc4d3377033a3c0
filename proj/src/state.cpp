#include "mhd/state.hpp"

#include <cmath>
#include <stdexcept>

namespace mhd {

double pressure(const ConservedState& q, double gamma) {
  if (q.rho == 0.0) throw std::domain_error("pressure: zero density");
  const double m2 = q.mom[0] * q.mom[0] + q.mom[1] * q.mom[1] + q.mom[2] * q.mom[2];
  const double b2 = q.b[0] * q.b[0] + q.b[1] * q.b[1] + q.b[2] * q.b[2];
  return (gamma - 1.0) * (q.energy - 0.5 * m2 / q.rho - 0.5 * b2);
}

double pressure(const State8& q, double gamma) {
  const double m2 = q[IMX] * q[IMX] + q[IMY] * q[IMY] + q[IMZ] * q[IMZ];
  const double b2 = q[IBX] * q[IBX] + q[IBY] * q[IBY] + q[IBZ] * q[IBZ];
  return (gamma - 1.0) * (q[IEN] - 0.5 * m2 / q[IRHO] - 0.5 * b2);
}

PrimitiveState to_primitive(const ConservedState& q, double gamma) {
  if (q.rho <= 0.0) throw std::domain_error("to_primitive: inadmissible density");
  PrimitiveState w;
  w.rho = q.rho;
  for (int d = 0; d < 3; ++d) w.u[d] = q.mom[d] / q.rho;
  w.p = pressure(q, gamma);
  w.b = q.b;
  return w;
}

ConservedState to_conserved(const PrimitiveState& w, double gamma) {
  ConservedState q;
  q.rho = w.rho;
  for (int d = 0; d < 3; ++d) q.mom[d] = w.rho * w.u[d];
  const double u2 = w.u[0] * w.u[0] + w.u[1] * w.u[1] + w.u[2] * w.u[2];
  const double b2 = w.b[0] * w.b[0] + w.b[1] * w.b[1] + w.b[2] * w.b[2];
  q.energy = w.p / (gamma - 1.0) + 0.5 * w.rho * u2 + 0.5 * b2;
  q.b = w.b;
  return q;
}

bool admissible(const ConservedState& q, double gamma) {
  if (!(q.rho >= 1e-300)) return false;
  return pressure(q, gamma) >= 1e-300;
}

Grid Grid::make(int dims, std::array<int, 3> n, std::array<double, 3> lo,
                std::array<double, 3> hi, int ghost) {
  Grid g;
  g.dims = dims;
  g.ghost = ghost;
  for (int a = 0; a < 3; ++a) {
    if (a < dims) {
      if (n[a] < 1) throw std::invalid_argument("Grid: mesh size must be positive");
      g.n[a] = n[a];
      g.lo[a] = lo[a];
      g.hi[a] = hi[a];
      g.dx[a] = (hi[a] - lo[a]) / n[a];
      if (!(g.dx[a] > 0.0)) throw std::invalid_argument("Grid: domain bounds inverted");
    } else {
      g.n[a] = 1;
      g.lo[a] = 0.0;
      g.hi[a] = 0.0;
      g.dx[a] = 1.0;
    }
  }
  return g;
}

namespace {

// Fill ghosts of one component array along axis `a` for the standard rules.
// Transverse extents cover the full (already partially extended) range so that
// corner regions become consistent after sweeping axes in order.
void fill_axis(std::vector<double>& v, const Grid& g, int a, BcKind lo_kind, BcKind hi_kind) {
  const int gh = g.ghost;
  const int n = g.n[a];
  const std::size_t s = g.stride(a);
  // iterate over all lines along axis a
  const int b = (a == 0) ? 1 : 0;
  const int c = (a == 2) ? 1 : 2;
  for (int kk = 0; kk < g.ext(c); ++kk) {
    for (int jj = 0; jj < g.ext(b); ++jj) {
      std::size_t base = 0;
      // index with axis a at 0
      int ijk[3] = {0, 0, 0};
      ijk[b] = jj;
      ijk[c] = kk;
      base = g.index(ijk[0], ijk[1], ijk[2]);
      double* line = v.data() + base;
      if (lo_kind == BcKind::Periodic) {
        for (int i = 0; i < gh; ++i) line[i * s] = line[(i + n) * s];
      } else if (lo_kind == BcKind::ZeroOrder) {
        for (int i = 0; i < gh; ++i) line[i * s] = line[gh * s];
      }
      if (hi_kind == BcKind::Periodic) {
        for (int i = 0; i < gh; ++i) line[(gh + n + i) * s] = line[(gh + i) * s];
      } else if (hi_kind == BcKind::ZeroOrder) {
        for (int i = 0; i < gh; ++i) line[(gh + n + i) * s] = line[(gh + n - 1) * s];
      }
    }
  }
}

}  // namespace

void fill_ghost(FieldArray& f, const Boundary& bc, double t) {
  const Grid& g = f.grid;
  for (int a = 0; a < g.dims; ++a)
    for (int c = 0; c < kNumComp; ++c)
      fill_axis(f.comp[c], g, a, bc.kind[a][0], bc.kind[a][1]);
  if (bc.custom_state) bc.custom_state(f, t);
}

void fill_ghost_scalar(ScalarField& f, const std::array<std::array<BcKind, 2>, 3>& kind) {
  const Grid& g = f.grid;
  for (int a = 0; a < g.dims; ++a) fill_axis(f.v, g, a, kind[a][0], kind[a][1]);
}

}  // namespace mhd
