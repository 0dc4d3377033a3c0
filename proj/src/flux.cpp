#include "mhd/flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mhd {

std::array<int, 8> axis_permutation(int dir) {
  const int n = dir, t1 = (dir + 1) % 3, t2 = (dir + 2) % 3;
  return {IRHO, IMX + n, IMX + t1, IMX + t2, IEN, IBX + n, IBX + t1, IBX + t2};
}

State8 physical_flux(const State8& q, int dir, double gamma) {
  const int n = dir, t1 = (dir + 1) % 3, t2 = (dir + 2) % 3;
  const double rho = q[IRHO];
  const double un = q[IMX + n] / rho;
  const double ut1 = q[IMX + t1] / rho;
  const double ut2 = q[IMX + t2] / rho;
  const double Bn = q[IBX + n], Bt1 = q[IBX + t1], Bt2 = q[IBX + t2];
  const double b2 = Bn * Bn + Bt1 * Bt1 + Bt2 * Bt2;
  const double p = pressure(q, gamma);
  const double pt = p + 0.5 * b2;
  const double udotb = un * Bn + ut1 * Bt1 + ut2 * Bt2;

  State8 f{};
  f[IRHO] = q[IMX + n];
  f[IMX + n] = q[IMX + n] * un + pt - Bn * Bn;
  f[IMX + t1] = q[IMX + t1] * un - Bn * Bt1;
  f[IMX + t2] = q[IMX + t2] * un - Bn * Bt2;
  f[IEN] = un * (q[IEN] + pt) - Bn * udotb;
  f[IBX + n] = 0.0;
  f[IBX + t1] = un * Bt1 - ut1 * Bn;
  f[IBX + t2] = un * Bt2 - ut2 * Bn;
  return f;
}

double fast_speed(const PrimitiveState& w, int dir, double gamma) {
  if (w.rho <= 0.0) throw std::domain_error("fast_speed: nonpositive density");
  const double a2 = gamma * w.p / w.rho;
  const double b2 = (w.b[0] * w.b[0] + w.b[1] * w.b[1] + w.b[2] * w.b[2]) / w.rho;
  const double bd2 = w.b[dir] * w.b[dir] / w.rho;
  const double sum = a2 + b2;
  const double disc = std::sqrt(std::max(sum * sum - 4.0 * a2 * bd2, 0.0));
  return std::sqrt(0.5 * (sum + disc));
}

double global_alpha(const FieldArray& field, int dir, double gamma) {
  const Grid& g = field.grid;
  const double* rho = field.data(IRHO);
  const double* mn = field.data(IMX + dir);
  double amax = 0.0;
#pragma omp parallel for collapse(2) reduction(max : amax) schedule(static)
  for (int k = g.ibeg(2); k < g.iend(2); ++k) {
    for (int j = g.ibeg(1); j < g.iend(1); ++j) {
      for (int i = g.ibeg(0); i < g.iend(0); ++i) {
        const std::size_t idx = g.index(i, j, k);
        const State8 q = field.get(idx);
        PrimitiveState w;
        w.rho = std::abs(rho[idx]);
        w.p = std::abs(pressure(q, gamma));
        w.b = {q[IBX], q[IBY], q[IBZ]};
        const double un = std::abs(mn[idx]) / w.rho;
        amax = std::max(amax, un + fast_speed(w, dir, gamma));
      }
    }
  }
  return amax;
}

// qm is in local (axis-permuted) ordering: rho, m_n, m_t1, m_t2, E, B_n, B_t1, B_t2.
EigenSystem eigensystem_local(const State8& qm, double gamma) {
  // local primitive quantities with the |rho|,|p| guard
  const double rho = std::abs(qm[IRHO]);
  if (rho == 0.0) throw std::domain_error("eigensystem: zero density");
  const double vx = qm[1] / qm[IRHO];
  const double vy = qm[2] / qm[IRHO];
  const double vz = qm[3] / qm[IRHO];
  const double p = std::abs(pressure(qm, gamma));
  const double Bx = qm[5], By = qm[6], Bz = qm[7];

  const double a2 = gamma * p / rho;
  const double cax2 = Bx * Bx / rho;
  const double bp2 = (By * By + Bz * Bz) / rho;
  // (a2+ca2)^2 - 4 a2 cax2 rewritten without cancellation
  const double tdiff = a2 - cax2 + bp2;
  const double disc = std::sqrt(std::max(tdiff * tdiff + 4.0 * cax2 * bp2, 0.0));
  const double cf2 = std::max(0.5 * (a2 + cax2 + bp2 + disc), 1e-300);
  const double cf = std::sqrt(cf2);
  const double cs2 = a2 * cax2 / cf2;
  const double cs = std::sqrt(cs2);
  const double cax = std::sqrt(cax2);
  const double a = std::sqrt(a2);
  const double sqd = std::sqrt(rho);

  const double bperp = std::sqrt(By * By + Bz * Bz);
  double bety = 1.0, betz = 0.0;
  if (bperp > 0.0) {
    bety = By / bperp;
    betz = Bz / bperp;
  }
  double af = 1.0, as = 0.0;
  const double dfs = cf2 - cs2;
  if (dfs > 1e-294) {
    const double af2 = std::clamp((a2 - cs2) / dfs, 0.0, 1.0);
    af = std::sqrt(af2);
    as = std::sqrt(1.0 - af2);
  }
  const double S = (Bx >= 0.0) ? 1.0 : -1.0;

  EigenSystem es;
  es.lambda = {vx - cf, vx - cax, vx - cs, vx, vx + cs, vx + cax, vx + cf};

  // right/left eigenvectors in primitive variables (d, vn, vt1, vt2, p, Bt1, Bt2)
  double Rw[7][7] = {};
  double Lw[7][7] = {};
  const double qf = cf * af, qs = cs * as;
  const double Aaf = sqd * a * af, Aas = sqd * a * as;

  auto set_col = [&](int c, std::initializer_list<double> v) {
    int r = 0;
    for (double x : v) Rw[r++][c] = x;
  };
  set_col(0, {rho * af, -qf, qs * bety * S, qs * betz * S, rho * a2 * af, Aas * bety, Aas * betz});
  set_col(6, {rho * af, +qf, -qs * bety * S, -qs * betz * S, rho * a2 * af, Aas * bety, Aas * betz});
  set_col(1, {0, 0, -betz, bety, 0, -sqd * betz * S, sqd * bety * S});
  set_col(5, {0, 0, -betz, bety, 0, +sqd * betz * S, -sqd * bety * S});
  set_col(2, {rho * as, -qs, -qf * bety * S, -qf * betz * S, rho * a2 * as, -Aaf * bety, -Aaf * betz});
  set_col(4, {rho * as, +qs, +qf * bety * S, +qf * betz * S, rho * a2 * as, -Aaf * bety, -Aaf * betz});
  set_col(3, {1, 0, 0, 0, 0, 0, 0});

  const double N = 1.0 / (2.0 * a2);
  auto set_row = [&](int r, std::initializer_list<double> v) {
    int c = 0;
    for (double x : v) Lw[r][c++] = x;
  };
  set_row(0, {0, -N * qf, N * qs * bety * S, N * qs * betz * S, N * af / rho,
              N * as * a * bety / sqd, N * as * a * betz / sqd});
  set_row(6, {0, +N * qf, -N * qs * bety * S, -N * qs * betz * S, N * af / rho,
              N * as * a * bety / sqd, N * as * a * betz / sqd});
  set_row(1, {0, 0, -0.5 * betz, 0.5 * bety, 0, -0.5 * betz * S / sqd, 0.5 * bety * S / sqd});
  set_row(5, {0, 0, -0.5 * betz, 0.5 * bety, 0, +0.5 * betz * S / sqd, -0.5 * bety * S / sqd});
  set_row(2, {0, -N * qs, -N * qf * bety * S, -N * qf * betz * S, N * as / rho,
              -N * af * a * bety / sqd, -N * af * a * betz / sqd});
  set_row(4, {0, +N * qs, +N * qf * bety * S, +N * qf * betz * S, N * as / rho,
              -N * af * a * bety / sqd, -N * af * a * betz / sqd});
  set_row(3, {1, 0, 0, 0, -1.0 / a2, 0, 0});

  // conserved <-> primitive transforms (7-var, normal B held fixed)
  const double v2h = 0.5 * (vx * vx + vy * vy + vz * vz);
  const double gm1 = gamma - 1.0;
  // M = dq/dw, Mi = dw/dq
  double M[7][7] = {};
  M[0][0] = 1.0;
  M[1][0] = vx; M[1][1] = rho;
  M[2][0] = vy; M[2][2] = rho;
  M[3][0] = vz; M[3][3] = rho;
  M[4][0] = v2h; M[4][1] = rho * vx; M[4][2] = rho * vy; M[4][3] = rho * vz;
  M[4][4] = 1.0 / gm1; M[4][5] = By; M[4][6] = Bz;
  M[5][5] = 1.0; M[6][6] = 1.0;
  double Mi[7][7] = {};
  Mi[0][0] = 1.0;
  Mi[1][0] = -vx / rho; Mi[1][1] = 1.0 / rho;
  Mi[2][0] = -vy / rho; Mi[2][2] = 1.0 / rho;
  Mi[3][0] = -vz / rho; Mi[3][3] = 1.0 / rho;
  Mi[4][0] = gm1 * v2h; Mi[4][1] = -gm1 * vx; Mi[4][2] = -gm1 * vy; Mi[4][3] = -gm1 * vz;
  Mi[4][4] = gm1; Mi[4][5] = -gm1 * By; Mi[4][6] = -gm1 * Bz;
  Mi[5][5] = 1.0; Mi[6][6] = 1.0;

  for (int r = 0; r < 7; ++r) {
    for (int c = 0; c < 7; ++c) {
      double sR = 0.0, sL = 0.0;
      for (int m = 0; m < 7; ++m) {
        sR += M[r][m] * Rw[m][c];
        sL += Lw[r][m] * Mi[m][c];
      }
      es.right[r][c] = sR;
      es.left[r][c] = sL;
    }
  }
  return es;
}

EigenSystem eigensystem(const State8& qL, const State8& qR, int dir, double gamma) {
  const auto perm = axis_permutation(dir);
  State8 qm;
  for (int c = 0; c < 8; ++c) qm[c] = 0.5 * (qL[perm[c]] + qR[perm[c]]);
  return eigensystem_local(qm, gamma);
}

}  // namespace mhd
