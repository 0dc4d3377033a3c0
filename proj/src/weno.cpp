#include "mhd/weno.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mhd/flux.hpp"

namespace mhd {

namespace {

constexpr double kWenoEps = 1e-6;

// classic Jiang-Shu weights, left-biased kernel on v[0..4] = v_{j-2..j+2}
inline double weno5_left(const double v[5]) {
  const double s0 = (13.0 / 12.0) * (v[0] - 2.0 * v[1] + v[2]) * (v[0] - 2.0 * v[1] + v[2]) +
                    0.25 * (v[0] - 4.0 * v[1] + 3.0 * v[2]) * (v[0] - 4.0 * v[1] + 3.0 * v[2]);
  const double s1 = (13.0 / 12.0) * (v[1] - 2.0 * v[2] + v[3]) * (v[1] - 2.0 * v[2] + v[3]) +
                    0.25 * (v[1] - v[3]) * (v[1] - v[3]);
  const double s2 = (13.0 / 12.0) * (v[2] - 2.0 * v[3] + v[4]) * (v[2] - 2.0 * v[3] + v[4]) +
                    0.25 * (3.0 * v[2] - 4.0 * v[3] + v[4]) * (3.0 * v[2] - 4.0 * v[3] + v[4]);
  const double a0 = 0.1 / ((kWenoEps + s0) * (kWenoEps + s0));
  const double a1 = 0.6 / ((kWenoEps + s1) * (kWenoEps + s1));
  const double a2 = 0.3 / ((kWenoEps + s2) * (kWenoEps + s2));
  const double inv = 1.0 / (a0 + a1 + a2);
  const double p0 = (2.0 * v[0] - 7.0 * v[1] + 11.0 * v[2]) / 6.0;
  const double p1 = (-v[1] + 5.0 * v[2] + 2.0 * v[3]) / 6.0;
  const double p2 = (2.0 * v[2] + 5.0 * v[3] - v[4]) / 6.0;
  return inv * (a0 * p0 + a1 * p1 + a2 * p2);
}

}  // namespace

double weno5_reconstruct(const double v[5], WenoBias bias) {
  if (bias == WenoBias::Left) return weno5_left(v);
  const double r[5] = {v[4], v[3], v[2], v[1], v[0]};
  return weno5_left(r);
}

InterfaceField InterfaceField::make(const Grid& g, int axis) {
  InterfaceField f;
  f.axis = axis;
  for (int a = 0; a < 3; ++a) f.m[a] = g.active(a) ? g.n[a] : 1;
  f.m[axis] += 1;
  for (auto& c : f.comp) c.assign(f.size(), 0.0);
  return f;
}

namespace {

// physical flux in local (axis-permuted) component ordering
inline void flux_local(const double q[8], double gamma, double f[8]) {
  const double rho = q[0];
  const double un = q[1] / rho, ut1 = q[2] / rho, ut2 = q[3] / rho;
  const double Bn = q[5], Bt1 = q[6], Bt2 = q[7];
  const double b2 = Bn * Bn + Bt1 * Bt1 + Bt2 * Bt2;
  const double p = (gamma - 1.0) *
                   (q[4] - 0.5 * (q[1] * q[1] + q[2] * q[2] + q[3] * q[3]) / rho - 0.5 * b2);
  const double pt = p + 0.5 * b2;
  const double udotb = un * Bn + ut1 * Bt1 + ut2 * Bt2;
  f[0] = q[1];
  f[1] = q[1] * un + pt - Bn * Bn;
  f[2] = q[2] * un - Bn * Bt1;
  f[3] = q[3] * un - Bn * Bt2;
  f[4] = un * (q[4] + pt) - Bn * udotb;
  f[5] = 0.0;
  f[6] = un * Bt1 - ut1 * Bn;
  f[7] = un * Bt2 - ut2 * Bn;
}

void check_finite(const FieldArray& field, int axis) {
  const Grid& g = field.grid;
  const int pad = 3;
  for (int c = 0; c < kNumComp; ++c) {
    const double* v = field.data(c);
    for (int k = g.ibeg(2) - (g.active(2) ? pad : 0); k < g.iend(2) + (g.active(2) ? pad : 0); ++k)
      for (int j = g.ibeg(1) - (g.active(1) ? pad : 0); j < g.iend(1) + (g.active(1) ? pad : 0); ++j)
        for (int i = g.ibeg(0) - pad; i < g.iend(0) + pad; ++i) {
          if (!std::isfinite(v[g.index(i, j, k)])) {
            std::ostringstream os;
            os << "build_interface_fluxes(axis " << axis << "): non-finite input at comp " << c
               << " point (" << i - g.ibeg(0) << "," << j - g.ibeg(1) << "," << k - g.ibeg(2)
               << ")";
            throw std::runtime_error(os.str());
          }
        }
  }
}

}  // namespace

InterfaceField build_interface_fluxes(const FieldArray& field, int axis, double alpha,
                                      double gamma) {
  const Grid& g = field.grid;
  check_finite(field, axis);
  InterfaceField F = InterfaceField::make(g, axis);
  const auto perm = axis_permutation(axis);
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

      double qloc[6][8], floc[6][8];
      double cp[6][7], cm[6][7];
      for (int fi = 0; fi < nface; ++fi) {
        // stencil cells fi-3 .. fi+2 relative to local interior numbering
        const std::ptrdiff_t off = static_cast<std::ptrdiff_t>(fi) - 3;
        for (int sten = 0; sten < 6; ++sten) {
          const std::size_t idx = line0 + (off + sten) * s;
          for (int c = 0; c < 8; ++c) qloc[sten][c] = field.comp[perm[c]][idx];
          flux_local(qloc[sten], gamma, floc[sten]);
        }
        State8 qm;
        for (int c = 0; c < 8; ++c) qm[c] = 0.5 * (qloc[2][c] + qloc[3][c]);
        const EigenSystem es = eigensystem_local(qm, gamma);

        // project split fluxes onto left eigenvectors (7-system drops slot 5)
        static constexpr int k7[7] = {0, 1, 2, 3, 4, 6, 7};
        for (int sten = 0; sten < 6; ++sten) {
          for (int w = 0; w < 7; ++w) {
            double cf = 0.0, cq = 0.0;
            for (int c = 0; c < 7; ++c) {
              cf += es.left[w][c] * floc[sten][k7[c]];
              cq += es.left[w][c] * qloc[sten][k7[c]];
            }
            cp[sten][w] = 0.5 * (cf + alpha * cq);
            cm[sten][w] = 0.5 * (cf - alpha * cq);
          }
        }

        double chat[7];
        for (int w = 0; w < 7; ++w) {
          const double vp[5] = {cp[0][w], cp[1][w], cp[2][w], cp[3][w], cp[4][w]};
          const double vm[5] = {cm[5][w], cm[4][w], cm[3][w], cm[2][w], cm[1][w]};
          chat[w] = weno5_left(vp) + weno5_left(vm);
        }

        // normal-B is advanced component-wise: physical flux is zero, the
        // split fluxes are +-alpha/2 * Bn
        const double bp[5] = {qloc[0][5], qloc[1][5], qloc[2][5], qloc[3][5], qloc[4][5]};
        const double bm[5] = {qloc[5][5], qloc[4][5], qloc[3][5], qloc[2][5], qloc[1][5]};
        const double hbn = 0.5 * alpha * (weno5_left(bp) - weno5_left(bm));

        int fc[3];
        fc[axis] = fi;
        fc[tb] = jj;
        fc[tc] = kk;
        const std::size_t fidx = F.index(fc[0], fc[1], fc[2]);
        for (int c7 = 0; c7 < 7; ++c7) {
          double v = 0.0;
          for (int w = 0; w < 7; ++w) v += es.right[c7][w] * chat[w];
          F.comp[perm[k7[c7]]][fidx] = v;
        }
        F.comp[perm[5]][fidx] = hbn;
      }
    }
  }
  return F;
}

std::vector<double> scalar_weno_derivative(const ScalarField& values, int axis,
                                           const std::vector<double>& windsign) {
  const Grid& g = values.grid;
  std::vector<double> out(g.size(), 0.0);
  const std::size_t s = g.stride(axis);
  const double invdx = 1.0 / g.dx[axis];
  const double* v = values.v.data();

#pragma omp parallel for collapse(2) schedule(static)
  for (int k = g.ibeg(2); k < g.iend(2); ++k) {
    for (int j = g.ibeg(1); j < g.iend(1); ++j) {
      for (int i = g.ibeg(0); i < g.iend(0); ++i) {
        const std::size_t idx = g.index(i, j, k);
        double vm, vp;
        if (windsign[idx] >= 0.0) {
          const double a[5] = {v[idx - 3 * s], v[idx - 2 * s], v[idx - s], v[idx], v[idx + s]};
          const double b[5] = {v[idx - 2 * s], v[idx - s], v[idx], v[idx + s], v[idx + 2 * s]};
          vm = weno5_left(a);
          vp = weno5_left(b);
        } else {
          const double a[5] = {v[idx + 2 * s], v[idx + s], v[idx], v[idx - s], v[idx - 2 * s]};
          const double b[5] = {v[idx + 3 * s], v[idx + 2 * s], v[idx + s], v[idx], v[idx - s]};
          vm = weno5_left(a);
          vp = weno5_left(b);
        }
        out[idx] = (vp - vm) * invdx;
      }
    }
  }
  return out;
}

void accumulate_flux_divergence(const InterfaceField& flux, const Grid& g, FieldArray& L) {
  const int axis = flux.axis;
  const double invdx = 1.0 / g.dx[axis];
  const int nb0 = g.active(0) ? g.n[0] : 1;
  const int nb1 = g.active(1) ? g.n[1] : 1;
  const int nb2 = g.active(2) ? g.n[2] : 1;
  for (int c = 0; c < kNumComp; ++c) {
    double* out = L.data(c);
    const double* f = flux.comp[c].data();
#pragma omp parallel for collapse(2) schedule(static)
    for (int k = 0; k < nb2; ++k) {
      for (int j = 0; j < nb1; ++j) {
        for (int i = 0; i < nb0; ++i) {
          int fp[3] = {i, j, k};
          fp[axis] += 1;
          const double diff = f[flux.index(fp[0], fp[1], fp[2])] - f[flux.index(i, j, k)];
          out[g.index(g.ibeg(0) + i, g.ibeg(1) + j, g.ibeg(2) + k)] -= diff * invdx;
        }
      }
    }
  }
}

}  // namespace mhd
