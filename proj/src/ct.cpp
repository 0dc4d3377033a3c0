#include "mhd/ct.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mhd/weno.hpp"

namespace mhd {

void fill_ghost_potential(MagneticPotential& A, const Boundary& bc, double t) {
  for (int c = 0; c < A.ncomp; ++c) {
    ScalarField tmp(A.grid);
    tmp.v.swap(A.a[c]);
    fill_ghost_scalar(tmp, bc.kind);
    tmp.v.swap(A.a[c]);
  }
  if (bc.custom_potential) bc.custom_potential(A, t);
}

namespace {

std::vector<double> velocity_component(const FieldArray& f, int d) {
  std::vector<double> u(f.grid.size(), 0.0);
  const double* rho = f.data(IRHO);
  const double* m = f.data(IMX + d);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = (rho[i] != 0.0) ? m[i] / rho[i] : 0.0;
  return u;
}

std::vector<double> negate(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

// undivided second difference along axis, times resist_coeff * alpha_d / dx_d
void add_resistivity(const MagneticPotential& A, int comp, double coeff,
                     const std::array<double, 3>& alpha, std::vector<double>& rhs) {
  if (coeff <= 0.0) return;
  const Grid& g = A.grid;
  const double* v = A.a[comp].data();
  for (int d = 0; d < g.dims; ++d) {
    const std::size_t s = g.stride(d);
    const double fac = coeff * alpha[d] / g.dx[d];
#pragma omp parallel for collapse(2) schedule(static)
    for (int k = g.ibeg(2); k < g.iend(2); ++k)
      for (int j = g.ibeg(1); j < g.iend(1); ++j)
        for (int i = g.ibeg(0); i < g.iend(0); ++i) {
          const std::size_t idx = g.index(i, j, k);
          rhs[idx] += fac * (v[idx + s] - 2.0 * v[idx] + v[idx - s]);
        }
  }
}

}  // namespace

std::array<std::vector<double>, 3> potential_rhs(const MagneticPotential& A,
                                                 const FieldArray& stage_state,
                                                 const std::array<double, 3>& stage_alpha,
                                                 double resist_coeff, double gamma) {
  (void)gamma;
  const Grid& g = A.grid;
  std::array<std::vector<double>, 3> rhs;

  auto as_scalar = [&](int c) {
    ScalarField s(g);
    s.v = A.a[c];
    return s;
  };

  if (g.dims == 2) {
    const std::vector<double> ux = velocity_component(stage_state, 0);
    const std::vector<double> uy = velocity_component(stage_state, 1);
    const ScalarField Az = as_scalar(0);
    const std::vector<double> dAdx = scalar_weno_derivative(Az, 0, ux);
    const std::vector<double> dAdy = scalar_weno_derivative(Az, 1, uy);
    rhs[0].assign(g.size(), 0.0);
#pragma omp parallel for collapse(2) schedule(static)
    for (int k = g.ibeg(2); k < g.iend(2); ++k)
      for (int j = g.ibeg(1); j < g.iend(1); ++j)
        for (int i = g.ibeg(0); i < g.iend(0); ++i) {
          const std::size_t idx = g.index(i, j, k);
          rhs[0][idx] = -(ux[idx] * dAdx[idx] + uy[idx] * dAdy[idx]);
        }
    return rhs;
  }

  // 3D: dA/dt = u x (curl A), expanded per component with per-term upwinding
  const std::array<std::vector<double>, 3> u = {velocity_component(stage_state, 0),
                                                velocity_component(stage_state, 1),
                                                velocity_component(stage_state, 2)};
  const std::array<std::vector<double>, 3> un = {negate(u[0]), negate(u[1]), negate(u[2])};
  const std::array<ScalarField, 3> Ac = {as_scalar(0), as_scalar(1), as_scalar(2)};

  for (int c = 0; c < 3; ++c) {
    const int e1 = (c + 1) % 3, e2 = (c + 2) % 3;
    // dA_c/dt + u_e1 d_e1 A_c + u_e2 d_e2 A_c - u_e1 d_c A_e1 - u_e2 d_c A_e2 = 0
    const std::vector<double> adv1 = scalar_weno_derivative(Ac[c], e1, u[e1]);
    const std::vector<double> adv2 = scalar_weno_derivative(Ac[c], e2, u[e2]);
    const std::vector<double> crs1 = scalar_weno_derivative(Ac[e1], c, un[e1]);
    const std::vector<double> crs2 = scalar_weno_derivative(Ac[e2], c, un[e2]);
    rhs[c].assign(g.size(), 0.0);
#pragma omp parallel for collapse(2) schedule(static)
    for (int k = g.ibeg(2); k < g.iend(2); ++k)
      for (int j = g.ibeg(1); j < g.iend(1); ++j)
        for (int i = g.ibeg(0); i < g.iend(0); ++i) {
          const std::size_t idx = g.index(i, j, k);
          rhs[c][idx] = -(u[e1][idx] * adv1[idx] + u[e2][idx] * adv2[idx]) +
                        u[e1][idx] * crs1[idx] + u[e2][idx] * crs2[idx];
        }
    add_resistivity(A, c, resist_coeff, stage_alpha, rhs[c]);
  }
  return rhs;
}

void evolve_potential(MagneticPotential& A, const std::array<const FieldArray*, 3>& stages,
                      const std::array<std::array<double, 3>, 3>& stage_alphas, double dt,
                      const Boundary& bc, const std::array<double, 3>& stage_times,
                      double resist_coeff, double gamma) {
  const Grid& g = A.grid;
  const std::size_t nsz = g.size();

  fill_ghost_potential(A, bc, stage_times[0]);
  const auto k0 = potential_rhs(A, *stages[0], stage_alphas[0], resist_coeff, gamma);

  MagneticPotential A1 = A;
  for (int c = 0; c < A.ncomp; ++c)
    for (std::size_t i = 0; i < nsz; ++i) A1.a[c][i] = A.a[c][i] + dt * k0[c][i];
  fill_ghost_potential(A1, bc, stage_times[1]);
  const auto k1 = potential_rhs(A1, *stages[1], stage_alphas[1], resist_coeff, gamma);

  MagneticPotential A2 = A;
  for (int c = 0; c < A.ncomp; ++c)
    for (std::size_t i = 0; i < nsz; ++i)
      A2.a[c][i] = A.a[c][i] + 0.25 * dt * (k0[c][i] + k1[c][i]);
  fill_ghost_potential(A2, bc, stage_times[2]);
  const auto k2 = potential_rhs(A2, *stages[2], stage_alphas[2], resist_coeff, gamma);

  for (int c = 0; c < A.ncomp; ++c)
    for (std::size_t i = 0; i < nsz; ++i)
      A.a[c][i] += (dt / 6.0) * (k0[c][i] + 4.0 * k2[c][i] + k1[c][i]);
}

namespace {

inline double d4(const double* v, std::size_t idx, std::size_t s, double invdx) {
  return (v[idx - 2 * s] - 8.0 * v[idx - s] + 8.0 * v[idx + s] - v[idx + 2 * s]) *
         (invdx / 12.0);
}

}  // namespace

std::array<std::vector<double>, 3> curl(const MagneticPotential& A, int pad) {
  const Grid& g = A.grid;
  if (pad > g.ghost - 2) throw std::invalid_argument("curl: pad too wide for ghost layers");
  std::array<std::vector<double>, 3> B;
  for (auto& b : B) b.assign(g.size(), 0.0);
  const int p0 = g.active(0) ? pad : 0;
  const int p1 = g.active(1) ? pad : 0;
  const int p2 = g.active(2) ? pad : 0;

  if (g.dims == 2) {
    const double* Az = A.a[0].data();
    const std::size_t sx = g.stride(0), sy = g.stride(1);
    const double ix = 1.0 / g.dx[0], iy = 1.0 / g.dx[1];
#pragma omp parallel for collapse(2) schedule(static)
    for (int k = g.ibeg(2); k < g.iend(2); ++k)
      for (int j = g.ibeg(1) - p1; j < g.iend(1) + p1; ++j)
        for (int i = g.ibeg(0) - p0; i < g.iend(0) + p0; ++i) {
          const std::size_t idx = g.index(i, j, k);
          B[0][idx] = d4(Az, idx, sy, iy);
          B[1][idx] = -d4(Az, idx, sx, ix);
        }
    return B;
  }

  const double* Ax = A.a[0].data();
  const double* Ay = A.a[1].data();
  const double* Az = A.a[2].data();
  const std::size_t sx = g.stride(0), sy = g.stride(1), sz = g.stride(2);
  const double ix = 1.0 / g.dx[0], iy = 1.0 / g.dx[1], iz = 1.0 / g.dx[2];
#pragma omp parallel for collapse(2) schedule(static)
  for (int k = g.ibeg(2) - p2; k < g.iend(2) + p2; ++k)
    for (int j = g.ibeg(1) - p1; j < g.iend(1) + p1; ++j)
      for (int i = g.ibeg(0) - p0; i < g.iend(0) + p0; ++i) {
        const std::size_t idx = g.index(i, j, k);
        B[0][idx] = d4(Az, idx, sy, iy) - d4(Ay, idx, sz, iz);
        B[1][idx] = d4(Ax, idx, sz, iz) - d4(Az, idx, sx, ix);
        B[2][idx] = d4(Ay, idx, sx, ix) - d4(Ax, idx, sy, iy);
      }
  return B;
}

double divergence_error(const FieldArray& field) {
  const Grid& g = field.grid;
  const double vol = g.cell_volume();
  double sum = 0.0;
#pragma omp parallel for collapse(2) schedule(static) reduction(+ : sum)
  for (int k = g.ibeg(2); k < g.iend(2); ++k)
    for (int j = g.ibeg(1); j < g.iend(1); ++j)
      for (int i = g.ibeg(0); i < g.iend(0); ++i) {
        const std::size_t idx = g.index(i, j, k);
        double div = 0.0;
        for (int d = 0; d < g.dims; ++d)
          div += d4(field.data(IBX + d), idx, g.stride(d), 1.0 / g.dx[d]);
        sum += std::abs(div);
      }
  return sum * vol;
}

void correct_step(FieldArray& state, const MagneticPotential& A, const CtOptions& opts,
                  double gamma) {
  (void)gamma;
  const Grid& g = state.grid;
  const auto B = curl(A, 2);
  const int nb = (g.dims == 2) ? 2 : 3;
  const int p0 = g.active(0) ? 2 : 0;
  const int p1 = g.active(1) ? 2 : 0;
  const int p2 = g.active(2) ? 2 : 0;

#pragma omp parallel for collapse(2) schedule(static)
  for (int k = g.ibeg(2) - p2; k < g.iend(2) + p2; ++k)
    for (int j = g.ibeg(1) - p1; j < g.iend(1) + p1; ++j)
      for (int i = g.ibeg(0) - p0; i < g.iend(0) + p0; ++i) {
        const std::size_t idx = g.index(i, j, k);
        const bool interior = i >= g.ibeg(0) && i < g.iend(0) && j >= g.ibeg(1) &&
                              j < g.iend(1) && k >= g.ibeg(2) && k < g.iend(2);
        if (interior && opts.energy_option == 2) {
          double db2 = 0.0;
          for (int c = 0; c < nb; ++c) {
            const double bo = state.comp[IBX + c][idx];
            const double bn = B[c][idx];
            db2 += bn * bn - bo * bo;
          }
          state.comp[IEN][idx] += 0.5 * db2;
        }
        for (int c = 0; c < nb; ++c) state.comp[IBX + c][idx] = B[c][idx];
      }
}

}  // namespace mhd
