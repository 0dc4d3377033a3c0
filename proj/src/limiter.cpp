#include "mhd/limiter.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mhd/flux.hpp"

namespace mhd {

State8 lf_flux(const State8& qL, const State8& qR, int dir, double alpha, double gamma) {
  const State8 fL = physical_flux(qL, dir, gamma);
  const State8 fR = physical_flux(qR, dir, gamma);
  State8 f;
  for (int c = 0; c < kNumComp; ++c) f[c] = 0.5 * (fL[c] + fR[c] - alpha * (qR[c] - qL[c]));
  return f;
}

InterfaceField build_lf_fluxes(const FieldArray& field, int axis, double alpha, double gamma) {
  const Grid& g = field.grid;
  InterfaceField F = InterfaceField::make(g, axis);
  const std::size_t s = g.stride(axis);
  const int nface = F.m[axis];
  const int tb = (axis == 0) ? 1 : 0;
  const int tc = (axis == 2) ? 1 : 2;
  const int ntb = g.active(tb) ? g.n[tb] : 1;
  const int ntc = g.active(tc) ? g.n[tc] : 1;

#pragma omp parallel for collapse(2) schedule(static)
  for (int kk = 0; kk < ntc; ++kk) {
    for (int jj = 0; jj < ntb; ++jj) {
      int ijk[3] = {0, 0, 0};
      ijk[axis] = g.ibeg(axis);
      ijk[tb] = g.ibeg(tb) + jj;
      ijk[tc] = g.ibeg(tc) + kk;
      const std::size_t line0 = g.index(ijk[0], ijk[1], ijk[2]);
      for (int fi = 0; fi < nface; ++fi) {
        const std::size_t iL = line0 + (static_cast<std::ptrdiff_t>(fi) - 1) * s;
        const State8 f = lf_flux(field.get(iL), field.get(iL + s), axis, alpha, gamma);
        int fc[3];
        fc[axis] = fi;
        fc[tb] = jj;
        fc[tc] = kk;
        const std::size_t fidx = F.index(fc[0], fc[1], fc[2]);
        for (int c = 0; c < kNumComp; ++c) F.comp[c][fidx] = f[c];
      }
    }
  }
  return F;
}

State8 low_order_cell_update(const FieldArray& field, const std::array<InterfaceField, 3>& lf,
                             const std::array<double, 3>& lam, int dims, int ci, int cj, int ck) {
  const Grid& g = field.grid;
  State8 q = field.get(g.index(g.ibeg(0) + ci, g.ibeg(1) + cj, g.ibeg(2) + ck));
  for (int d = 0; d < dims; ++d) {
    int fm[3] = {ci, cj, ck};
    int fp[3] = {ci, cj, ck};
    fp[d] += 1;
    const std::size_t im = lf[d].index(fm[0], fm[1], fm[2]);
    const std::size_t ip = lf[d].index(fp[0], fp[1], fp[2]);
    for (int c = 0; c < kNumComp; ++c) q[c] -= lam[d] * (lf[d].comp[c][ip] - lf[d].comp[c][im]);
  }
  return q;
}

LowOrderSolve low_order_solution(const FieldArray& field, double dt, double gamma, double eps0,
                                 const std::array<double, 3>* alphas) {
  const Grid& g = field.grid;
  std::array<double, 3> alpha{0, 0, 0};
  for (int d = 0; d < g.dims; ++d)
    alpha[d] = alphas ? (*alphas)[d] : global_alpha(field, d, gamma);

  LowOrderSolve out{FieldArray(g), EpsilonBounds{eps0, eps0, eps0}, {}};
  std::array<double, 3> lam{0, 0, 0};
  for (int d = 0; d < g.dims; ++d) {
    out.flux[d] = build_lf_fluxes(field, d, alpha[d], gamma);
    lam[d] = dt / g.dx[d];
  }

  double min_rho = eps0, min_p = eps0;
  bool violated = false;
  int bad[3] = {0, 0, 0};
  const int n0 = g.active(0) ? g.n[0] : 1;
  const int n1 = g.active(1) ? g.n[1] : 1;
  const int n2 = g.active(2) ? g.n[2] : 1;
#pragma omp parallel for collapse(2) schedule(static) reduction(min : min_rho, min_p)
  for (int ck = 0; ck < n2; ++ck) {
    for (int cj = 0; cj < n1; ++cj) {
      for (int ci = 0; ci < n0; ++ci) {
        const State8 q = low_order_cell_update(field, out.flux, lam, g.dims, ci, cj, ck);
        const double p = pressure(q, gamma);
        min_rho = std::min(min_rho, q[IRHO]);
        min_p = std::min(min_p, p);
        if (!(q[IRHO] > 0.0) || !(p > 0.0)) {
#pragma omp critical
          {
            violated = true;
            bad[0] = ci;
            bad[1] = cj;
            bad[2] = ck;
          }
        }
        out.qhat.set(g.index(g.ibeg(0) + ci, g.ibeg(1) + cj, g.ibeg(2) + ck), q);
      }
    }
  }
  if (violated) {
    std::ostringstream os;
    os << "low-order scheme violated positivity at cell (" << bad[0] << "," << bad[1] << ","
       << bad[2] << "): min rho " << min_rho << ", min p " << min_p;
    throw std::runtime_error(os.str());
  }
  out.eps.eps_rho = min_rho;
  out.eps.eps_p = min_p;
  out.eps.eps0 = eps0;
  return out;
}

namespace {

// Generalized density step: c_rho[s] is the coefficient of theta_s in the
// updated density, rho(theta) = Gamma + sum_s c_rho[s] theta_s. Sides whose
// coefficient relaxes the bound keep Lambda = 1; if the bound fails with every
// theta at 1, all harmful sides share the single scale (Gamma-eps)/H.
void density_step(double Gamma, const double* c_rho, int nside, double eps_rho, double* lam) {
  double H = 0.0;
  for (int s = 0; s < nside; ++s) {
    lam[s] = 1.0;
    if (c_rho[s] < 0.0) H -= c_rho[s];
  }
  if (H > 0.0 && Gamma - H < eps_rho) {
    const double scale = std::min(1.0, (Gamma - eps_rho) / H);
    for (int s = 0; s < nside; ++s)
      if (c_rho[s] < 0.0) lam[s] = scale;
  }
}

}  // namespace

std::pair<double, double> density_bounds_1d(double Gamma, double lamF_minus, double lamF_plus,
                                            double eps_rho) {
  // rho(theta) = Gamma + theta_- * lamF_minus - theta_+ * lamF_plus
  const double c[2] = {lamF_minus, -lamF_plus};
  double lam[2];
  density_step(Gamma, c, 2, eps_rho, lam);
  return {lam[0], lam[1]};
}

double pressure_rescale_vertex(const State8& q_vertex, const State8& q_low, double eps_p,
                               double gamma) {
  if (pressure(q_vertex, gamma) >= eps_p) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 10; ++it) {
    const double mid = 0.5 * (lo + hi);
    State8 blend;
    for (int c = 0; c < kNumComp; ++c) blend[c] = mid * q_vertex[c] + (1.0 - mid) * q_low[c];
    if (pressure(blend, gamma) >= eps_p)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

CellBounds cell_bounds(const State8& q_low, const std::array<State8, 6>& lam_dF, int dims,
                       const EpsilonBounds& eps, double gamma) {
  const int nside = 2 * dims;
  // q(theta) = q_low + sum_s csign[s] * theta_s * lam_dF[s]
  double csign[6];
  double c_rho[6];
  for (int s = 0; s < nside; ++s) {
    csign[s] = (s % 2 == 0) ? +1.0 : -1.0;  // minus side adds, plus side subtracts
    c_rho[s] = csign[s] * lam_dF[s][IRHO];
  }
  CellBounds cb;
  density_step(q_low[IRHO], c_rho, nside, eps.eps_rho, cb.lam_density.data());

  // pressure step: rescale every nonzero vertex of the density box toward the
  // low-order point, then take per-side minima over vertices at that side's max
  double rmin[6];
  for (int s = 0; s < nside; ++s) rmin[s] = 1.0;
  const int nvert = 1 << nside;
  for (int v = 1; v < nvert; ++v) {
    State8 qv = q_low;
    for (int s = 0; s < nside; ++s) {
      if (v >> s & 1) {
        const double th = cb.lam_density[s];
        for (int c = 0; c < kNumComp; ++c) qv[c] += csign[s] * th * lam_dF[s][c];
      }
    }
    const double r = pressure_rescale_vertex(qv, q_low, eps.eps_p, gamma);
    if (r < 1.0) {
      for (int s = 0; s < nside; ++s)
        if (v >> s & 1) rmin[s] = std::min(rmin[s], r);
    }
  }
  for (int s = 0; s < nside; ++s) cb.lam_final[s] = cb.lam_density[s] * rmin[s];
  return cb;
}

std::array<InterfaceField, 3> limit_fluxes(const std::array<InterfaceField, 3>& high,
                                           const LowOrderSolve& low, const FieldArray& field_n,
                                           double dt, double gamma,
                                           const std::array<std::array<BcKind, 2>, 3>& bc_kind,
                                           LimiterStats* stats) {
  const Grid& g = field_n.grid;
  const int dims = g.dims;
  std::array<double, 3> lam{0, 0, 0};
  for (int d = 0; d < dims; ++d) lam[d] = dt / g.dx[d];

  const int n0 = g.active(0) ? g.n[0] : 1;
  const int n1 = g.active(1) ? g.n[1] : 1;
  const int n2 = g.active(2) ? g.n[2] : 1;
  const std::size_t ncell = static_cast<std::size_t>(n0) * n1 * n2;
  auto cell_id = [&](int ci, int cj, int ck) {
    return (static_cast<std::size_t>(ck) * n1 + cj) * n0 + ci;
  };

  std::vector<double> lam_final(ncell * 6, 1.0);

#pragma omp parallel for collapse(2) schedule(static)
  for (int ck = 0; ck < n2; ++ck) {
    for (int cj = 0; cj < n1; ++cj) {
      for (int ci = 0; ci < n0; ++ci) {
        const State8 qhat = low_order_cell_update(field_n, low.flux, lam, dims, ci, cj, ck);
        std::array<State8, 6> dF{};
        for (int d = 0; d < dims; ++d) {
          int fm[3] = {ci, cj, ck};
          int fp[3] = {ci, cj, ck};
          fp[d] += 1;
          const std::size_t im = low.flux[d].index(fm[0], fm[1], fm[2]);
          const std::size_t ip = low.flux[d].index(fp[0], fp[1], fp[2]);
          for (int c = 0; c < kNumComp; ++c) {
            dF[2 * d][c] = lam[d] * (high[d].comp[c][im] - low.flux[d].comp[c][im]);
            dF[2 * d + 1][c] = lam[d] * (high[d].comp[c][ip] - low.flux[d].comp[c][ip]);
          }
        }
        const CellBounds cb = cell_bounds(qhat, dF, dims, low.eps, gamma);
        for (int s = 0; s < 2 * dims; ++s) lam_final[cell_id(ci, cj, ck) * 6 + s] = cb.lam_final[s];
      }
    }
  }

  // combine per-interface theta and blend the fluxes
  std::array<InterfaceField, 3> out;
  double min_theta = 1.0;
  long limited = 0;
  for (int d = 0; d < dims; ++d) {
    out[d] = InterfaceField::make(g, d);
    const InterfaceField& H = high[d];
    const InterfaceField& L = low.flux[d];
    const int nface = out[d].m[d];
    const int tb = (d == 0) ? 1 : 0;
    const int tc = (d == 2) ? 1 : 2;
    const int ntb = g.active(tb) ? g.n[tb] : 1;
    const int ntc = g.active(tc) ? g.n[tc] : 1;
    const bool periodic = bc_kind[d][0] == BcKind::Periodic;
    for (int kk = 0; kk < ntc; ++kk) {
      for (int jj = 0; jj < ntb; ++jj) {
        for (int fi = 0; fi < nface; ++fi) {
          int cl[3], cr[3];
          cl[d] = fi - 1;
          cr[d] = fi;
          cl[tb] = cr[tb] = jj;
          cl[tc] = cr[tc] = kk;
          double theta = 1.0;
          // plus side (index 2d+1) of the left cell, minus side (2d) of the right
          int cld = cl[d], crd = cr[d];
          if (periodic) {
            if (cld < 0) cld = g.n[d] - 1;
            if (crd >= g.n[d]) crd = 0;
          }
          if (cld >= 0) {
            cl[d] = cld;
            theta = std::min(theta, lam_final[cell_id(cl[0], cl[1], cl[2]) * 6 + 2 * d + 1]);
          }
          if (crd < g.n[d]) {
            cr[d] = crd;
            theta = std::min(theta, lam_final[cell_id(cr[0], cr[1], cr[2]) * 6 + 2 * d]);
          }
          int fc[3];
          fc[d] = fi;
          fc[tb] = jj;
          fc[tc] = kk;
          const std::size_t idx = out[d].index(fc[0], fc[1], fc[2]);
          if (theta == 1.0) {
            for (int c = 0; c < kNumComp; ++c) out[d].comp[c][idx] = H.comp[c][idx];
          } else {
            // count the wrap-duplicated periodic face once
            if (!(periodic && fi == nface - 1)) {
              min_theta = std::min(min_theta, theta);
              ++limited;
            }
            for (int c = 0; c < kNumComp; ++c)
              out[d].comp[c][idx] =
                  theta * (H.comp[c][idx] - L.comp[c][idx]) + L.comp[c][idx];
          }
        }
      }
    }
  }
  if (stats) {
    stats->min_theta = min_theta;
    stats->limited_interfaces = limited;
  }
  return out;
}

}  // namespace mhd
