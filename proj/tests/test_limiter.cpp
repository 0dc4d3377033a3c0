#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mhd/flux.hpp"
#include "mhd/limiter.hpp"
#include "mhd/problems.hpp"
#include "oracles.hpp"

using namespace mhd;

namespace {
constexpr double kGamma = 5.0 / 3.0;

State8 prim(double rho, std::array<double, 3> u, double p, std::array<double, 3> b) {
  PrimitiveState w;
  w.rho = rho;
  w.u = u;
  w.p = p;
  w.b = b;
  return to_conserved(w, kGamma).to_array();
}

double max_speed(const State8& q, int dir) {
  const PrimitiveState w = to_primitive(ConservedState::from_array(q), kGamma);
  return std::abs(w.u[dir]) + fast_speed(w, dir, kGamma);
}

}  // namespace

TEST_CASE("lf flux: consistency at equal states") {
  for (int trial = 0; trial < 200; ++trial) {
    const State8 q = oracles::random_admissible();
    const int dir = trial % 3;
    const State8 f = lf_flux(q, q, dir, 3.7, kGamma);
    const State8 fx = physical_flux(q, dir, kGamma);
    for (int c = 0; c < kNumComp; ++c) CHECK(f[c] == doctest::Approx(fx[c]).epsilon(1e-13));
  }
}

TEST_CASE("lf forward-Euler step on the vacuum shock tube keeps positivity") {
  ProblemSpec spec = vacuum_shock_tube_1d();
  const Grid g = spec.make_grid({200, 1, 1});
  FieldArray f = spec.make_initial_field(g);
  fill_ghost(f, spec.boundary, 0.0);
  const double alpha = global_alpha(f, 0, kGamma);
  const double dt = 0.5 * g.dx[0] / alpha;
  const LowOrderSolve low = low_order_solution(f, dt, kGamma);
  CHECK(low.eps.eps_rho > 0.0);
  CHECK(low.eps.eps_p > 0.0);
  CHECK(low.eps.eps_rho <= 1e-13);
  CHECK(low.eps.eps_p <= 1e-13);
  double mr = 1e300, mp = 1e300;
  for (int i = g.ibeg(0); i < g.iend(0); ++i) {
    const State8 q = low.qhat.get(g.index(i, 0, 0));
    mr = std::min(mr, q[IRHO]);
    mp = std::min(mp, pressure(q, kGamma));
  }
  CHECK(mr > 0.0);
  CHECK(mp > 0.0);
}

TEST_CASE("lf forward-Euler positivity over random 1D Riemann problems at CFL 0.5") {
  int violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    // random admissible 3-cell problem, including near-vacuum magnitudes
    const State8 qL = oracles::random_admissible(1e-8, 3.0, 1e-8, 3.0, 2.0);
    const State8 qC = oracles::random_admissible(1e-8, 3.0, 1e-8, 3.0, 2.0);
    const State8 qR = oracles::random_admissible(1e-8, 3.0, 1e-8, 3.0, 2.0);
    const double alpha =
        std::max({max_speed(qL, 0), max_speed(qC, 0), max_speed(qR, 0)});
    const double lam = 0.5 / alpha;  // dt/dx at CFL exactly 0.5
    const State8 fp = lf_flux(qC, qR, 0, alpha, kGamma);
    const State8 fm = lf_flux(qL, qC, 0, alpha, kGamma);
    State8 qh;
    for (int c = 0; c < kNumComp; ++c) qh[c] = qC[c] - lam * (fp[c] - fm[c]);
    if (!(qh[IRHO] > 0.0) || !(pressure(qh, kGamma) > 0.0)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("density bounds: frozen case-table examples") {
  {
    const auto [lm, lp] = density_bounds_1d(0.5, 0.3, -0.2, 0.1);
    CHECK(lm == 1.0);
    CHECK(lp == 1.0);
  }
  {
    const auto [lm, lp] = density_bounds_1d(0.5, 0.3, 0.6, 0.1);
    CHECK(lm == 1.0);
    CHECK(lp == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  }
  {
    const auto [lm, lp] = density_bounds_1d(0.5, -0.2, 0.3, 0.1);
    CHECK(lm == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(lp == doctest::Approx(0.8).epsilon(1e-14));
  }
}

TEST_CASE("density bounds: the returned box satisfies the inequality (vertex oracle)") {
  for (int trial = 0; trial < 20000; ++trial) {
    const double eps = oracles::uniform(0.0, 0.2);
    const double Gamma = eps + oracles::uniform(0.0, 2.0);
    const double lFm = oracles::uniform(-2.0, 2.0);
    const double lFp = oracles::uniform(-2.0, 2.0);
    const auto [lm, lp] = density_bounds_1d(Gamma, lFm, lFp, eps);
    CHECK(lm >= 0.0);
    CHECK(lm <= 1.0);
    CHECK(lp >= 0.0);
    CHECK(lp <= 1.0);
    for (const auto& [tm, tp] : {std::pair{0.0, 0.0}, std::pair{lm, 0.0}, std::pair{0.0, lp},
                                 std::pair{lm, lp},
                                 std::pair{oracles::uniform(0, 1) * lm,
                                           oracles::uniform(0, 1) * lp}}) {
      CHECK(oracles::density_inequality_holds(Gamma, lFm, lFp, eps, tm, tp));
    }
  }
}

TEST_CASE("pressure rescale: pass-through, root bracketing, eps monotonicity") {
  const State8 q_low = prim(1.0, {0, 0, 0}, 1.0, {0, 0, 0});
  CHECK(pressure_rescale_vertex(q_low, q_low, 1e-13, kGamma) == 1.0);

  // colinear in energy: p(vertex) = -1
  State8 q_bad = q_low;
  q_bad[IEN] = -1.5;
  const double r = pressure_rescale_vertex(q_bad, q_low, 1e-13, kGamma);
  CHECK(r < 1.0);
  State8 blend;
  for (int c = 0; c < kNumComp; ++c) blend[c] = r * q_bad[c] + (1 - r) * q_low[c];
  CHECK(pressure(blend, kGamma) >= 1e-13);

  for (int trial = 0; trial < 1000; ++trial) {
    const State8 ql = oracles::random_admissible(0.1, 2, 0.5, 2, 1.0);
    State8 qv = oracles::random_admissible(0.1, 2, 0.01, 2, 3.0);
    qv[IEN] -= oracles::uniform(0.0, 10.0);  // often pressure-negative
    const double e1 = 1e-13, e2 = oracles::uniform(1e-13, 0.3);
    const double r1 = pressure_rescale_vertex(qv, ql, e1, kGamma);
    const double r2 = pressure_rescale_vertex(qv, ql, e2, kGamma);
    if (pressure(ql, kGamma) >= e2) {
      CHECK(r2 <= r1 + 1e-15);
      // returned blend is feasible
      State8 b2;
      for (int c = 0; c < kNumComp; ++c) b2[c] = r2 * qv[c] + (1 - r2) * ql[c];
      CHECK(pressure(b2, kGamma) >= e2 - 1e-12 * (1 + std::abs(e2)));
    }
  }
}

namespace {

// random single-cell limiter problem in `dims` dimensions; returns false if
// the low-order update was not admissible enough to pose the problem
bool random_cell_problem(int dims, State8& qn, State8& qhat, std::array<State8, 6>& lamdF,
                         EpsilonBounds& eps) {
  qn = oracles::random_admissible(1e-6, 3.0, 1e-6, 3.0, 1.5);
  std::array<State8, 6> flow{}, fhigh{};
  double lam_alpha_total = 0.0;
  std::array<double, 3> lam{};
  std::array<std::array<State8, 2>, 3> nbr{};
  std::array<double, 3> alpha{};
  for (int d = 0; d < dims; ++d) {
    nbr[d][0] = oracles::random_admissible(1e-6, 3.0, 1e-6, 3.0, 1.5);
    nbr[d][1] = oracles::random_admissible(1e-6, 3.0, 1e-6, 3.0, 1.5);
    alpha[d] = std::max({max_speed(qn, d), max_speed(nbr[d][0], d), max_speed(nbr[d][1], d)});
  }
  // split CFL 0.5 across directions
  for (int d = 0; d < dims; ++d) lam_alpha_total += alpha[d];
  for (int d = 0; d < dims; ++d) lam[d] = 0.5 / lam_alpha_total;

  qhat = qn;
  for (int d = 0; d < dims; ++d) {
    flow[2 * d] = lf_flux(nbr[d][0], qn, d, alpha[d], kGamma);
    flow[2 * d + 1] = lf_flux(qn, nbr[d][1], d, alpha[d], kGamma);
    for (int c = 0; c < kNumComp; ++c)
      qhat[c] -= lam[d] * (flow[2 * d + 1][c] - flow[2 * d][c]);
  }
  if (!(qhat[IRHO] > 0.0) || !(pressure(qhat, kGamma) > 0.0)) return false;
  eps.eps0 = 1e-13;
  eps.eps_rho = std::min(qhat[IRHO], 1e-13);
  eps.eps_p = std::min(pressure(qhat, kGamma), 1e-13);

  for (int s = 0; s < 2 * dims; ++s) {
    const int d = s / 2;
    for (int c = 0; c < kNumComp; ++c) {
      const double pert = oracles::uniform(-1.0, 1.0) * (std::abs(flow[s][c]) + 0.5);
      fhigh[s][c] = flow[s][c] + pert;
      lamdF[s][c] = lam[d] * (fhigh[s][c] - flow[s][c]);
    }
  }
  return true;
}

}  // namespace

TEST_CASE("cell bounds: Monte-Carlo box validity in 1D and 2D") {
  long cells = 0, samples_bad = 0;
  for (int dims = 1; dims <= 2; ++dims) {
    const long target = dims == 1 ? 5000 : 15000;
    for (int trial = 0; cells < target; ++trial) {
      REQUIRE(trial < 200000);
      State8 qn, qhat;
      std::array<State8, 6> lamdF{};
      EpsilonBounds eps;
      if (!random_cell_problem(dims, qn, qhat, lamdF, eps)) continue;
      ++cells;
      const CellBounds cb = cell_bounds(qhat, lamdF, dims, eps, kGamma);
      for (int s = 0; s < 2 * dims; ++s) {
        CHECK(cb.lam_final[s] <= cb.lam_density[s]);
        CHECK(cb.lam_final[s] >= 0.0);
      }
      // sample 100 theta points in the final box: both bounds must hold
      for (int smp = 0; smp < 100; ++smp) {
        State8 q = qhat;
        for (int s = 0; s < 2 * dims; ++s) {
          const double th = oracles::uniform(0.0, 1.0) * cb.lam_final[s];
          const double sign = (s % 2 == 0) ? +1.0 : -1.0;
          for (int c = 0; c < kNumComp; ++c) q[c] += sign * th * lamdF[s][c];
        }
        const double scale = std::abs(qhat[IRHO]) + 1.0;
        if (!(q[IRHO] >= eps.eps_rho - 1e-12 * scale)) ++samples_bad;
        if (!(pressure(q, kGamma) >= eps.eps_p - 1e-12 * scale)) ++samples_bad;
      }
      // density-only guarantee is exact for the density box
      for (int smp = 0; smp < 20; ++smp) {
        double rho = qhat[IRHO];
        for (int s = 0; s < 2 * dims; ++s) {
          const double th = oracles::uniform(0.0, 1.0) * cb.lam_density[s];
          const double sign = (s % 2 == 0) ? +1.0 : -1.0;
          rho += sign * th * lamdF[s][IRHO];
        }
        CHECK(rho >= eps.eps_rho - 1e-13 * (std::abs(qhat[IRHO]) + 1.0));
      }
    }
  }
  CHECK(cells == 15000);
  CHECK(samples_bad == 0);
}

TEST_CASE("lemma-1 convexity: feasible theta vectors blend feasibly") {
  for (int trial = 0; trial < 4000; ++trial) {
    State8 qn, qhat;
    std::array<State8, 6> lamdF{};
    EpsilonBounds eps;
    if (!random_cell_problem(1, qn, qhat, lamdF, eps)) continue;
    // two random theta vectors inside the density box with feasible pressure
    const CellBounds cb = cell_bounds(qhat, lamdF, 1, eps, kGamma);
    auto update = [&](double tm, double tp) {
      State8 q = qhat;
      for (int c = 0; c < kNumComp; ++c)
        q[c] += tm * lamdF[0][c] - tp * lamdF[1][c];
      return q;
    };
    const double t1m = oracles::uniform(0, 1) * cb.lam_density[0];
    const double t1p = oracles::uniform(0, 1) * cb.lam_density[1];
    const double t2m = oracles::uniform(0, 1) * cb.lam_density[0];
    const double t2p = oracles::uniform(0, 1) * cb.lam_density[1];
    const State8 q1 = update(t1m, t1p), q2 = update(t2m, t2p);
    const double p1 = pressure(q1, kGamma), p2 = pressure(q2, kGamma);
    if (p1 < eps.eps_p || p2 < eps.eps_p) continue;
    const double a = oracles::uniform(0, 1);
    const State8 qb = update(a * t1m + (1 - a) * t2m, a * t1p + (1 - a) * t2p);
    const double pb = pressure(qb, kGamma);
    const double scale = std::abs(p1) + std::abs(p2) + 1.0;
    CHECK(pb >= std::min(p1, p2) - 1e-11 * scale);
    CHECK(pb >= a * p1 + (1 - a) * p2 - 1e-11 * scale);
  }
}

TEST_CASE("limit_fluxes: high == low passes the low flux through unchanged") {
  ProblemSpec spec = vacuum_shock_tube_1d();
  const Grid g = spec.make_grid({64, 1, 1});
  FieldArray f = spec.make_initial_field(g);
  fill_ghost(f, spec.boundary, 0.0);
  const double alpha = global_alpha(f, 0, kGamma);
  const double dt = 0.5 * g.dx[0] / alpha;
  const LowOrderSolve low = low_order_solution(f, dt, kGamma);
  std::array<InterfaceField, 3> high;
  high[0] = low.flux[0];
  LimiterStats st;
  const auto lim = limit_fluxes(high, low, f, dt, kGamma, spec.boundary.kind, &st);
  for (std::size_t i = 0; i < lim[0].size(); ++i)
    for (int c = 0; c < kNumComp; ++c) CHECK(lim[0].comp[c][i] == low.flux[0].comp[c][i]);
}

TEST_CASE("limit_fluxes: forced theta = 0 reproduces the low-order update exactly") {
  // uniform state below eps0: the low-order solve is the identity, so
  // Gamma - eps_rho = 0 in every cell and any harmful side scales to zero
  const Grid g = Grid::make(1, {3, 1, 1}, {0, 0, 0}, {1, 0, 0});
  FieldArray f(g);
  const State8 q0 = prim(1e-14, {0, 0, 0}, 1e-14, {0, 0, 0});
  for (std::size_t i = 0; i < g.size(); ++i) f.set(i, q0);
  Boundary bc;
  for (int a = 0; a < 3; ++a) bc.kind[a] = {BcKind::ZeroOrder, BcKind::ZeroOrder};
  fill_ghost(f, bc, 0.0);
  const double alpha = global_alpha(f, 0, kGamma);
  const double dt = 0.5 * g.dx[0] / alpha;
  const LowOrderSolve low = low_order_solution(f, dt, kGamma);
  const State8 qhat_mid = low.qhat.get(g.index(g.ibeg(0) + 1, 0, 0));
  CHECK(qhat_mid[IRHO] == low.eps.eps_rho);

  // craft high fluxes that drain density from the middle cell on both sides
  std::array<InterfaceField, 3> high;
  high[0] = low.flux[0];
  high[0].comp[IRHO][1] -= 10.0;  // face between cells 0 and 1: outflow to the left
  high[0].comp[IRHO][2] += 10.0;  // face between cells 1 and 2: outflow to the right
  LimiterStats st;
  const auto lim = limit_fluxes(high, low, f, dt, kGamma, bc.kind, &st);
  CHECK(st.min_theta == 0.0);
  CHECK(lim[0].comp[IRHO][1] == low.flux[0].comp[IRHO][1]);
  CHECK(lim[0].comp[IRHO][2] == low.flux[0].comp[IRHO][2]);

  // the limited update of the middle cell equals the low-order update exactly
  State8 qmid = f.get(g.index(g.ibeg(0) + 1, 0, 0));
  const double lam = dt / g.dx[0];
  for (int c = 0; c < kNumComp; ++c)
    qmid[c] -= lam * (lim[0].comp[c][2] - lim[0].comp[c][1]);
  for (int c = 0; c < kNumComp; ++c)
    CHECK(qmid[c] == doctest::Approx(qhat_mid[c]).epsilon(1e-14));
}

TEST_CASE("multi-D reduction: y-uniform 2D limiter matches the 1D limiter") {
  // shared 1D profile with a rough high-order perturbation
  const int n = 40;
  auto profile = [&](double x) {
    PrimitiveState w;
    w.rho = (x < 0.5) ? 2e-10 : 1.0;
    w.p = (x < 0.5) ? 1e-10 : 0.4;
    w.u = {0.2 * std::sin(6 * x), 0.1, 0.0};
    w.b = {0.3, 0.8 * (x > 0.5), 0.1};
    return to_conserved(w, kGamma).to_array();
  };

  const Grid g1 = Grid::make(1, {n, 1, 1}, {0, 0, 0}, {1, 0, 0});
  FieldArray f1(g1);
  for (int i = g1.ibeg(0); i < g1.iend(0); ++i) f1.set(g1.index(i, 0, 0), profile(g1.pos(0, i)));
  Boundary bc1;
  for (int a = 0; a < 3; ++a) bc1.kind[a] = {BcKind::ZeroOrder, BcKind::ZeroOrder};
  fill_ghost(f1, bc1, 0.0);

  const int ny = 8;
  const Grid g2 = Grid::make(2, {n, ny, 1}, {0, 0, 0}, {1, 1, 0});
  FieldArray f2(g2);
  for (int j = g2.ibeg(1); j < g2.iend(1); ++j)
    for (int i = g2.ibeg(0); i < g2.iend(0); ++i)
      f2.set(g2.index(i, j, 0), profile(g2.pos(0, i)));
  Boundary bc2 = bc1;
  bc2.kind[1] = {BcKind::Periodic, BcKind::Periodic};  // y-uniform wrap
  fill_ghost(f2, bc2, 0.0);

  const double alpha1 = global_alpha(f1, 0, kGamma);
  const double dt = 0.25 * g1.dx[0] / alpha1;  // valid for both CFL rules

  const std::array<double, 3> a1{alpha1, 0, 0};
  const LowOrderSolve low1 = low_order_solution(f1, dt, kGamma, 1e-13, &a1);
  std::array<InterfaceField, 3> high1;
  high1[0] = build_interface_fluxes(f1, 0, alpha1, kGamma);
  const auto lim1 = limit_fluxes(high1, low1, f1, dt, kGamma, bc1.kind, nullptr);

  const std::array<double, 3> a2{alpha1, global_alpha(f2, 1, kGamma), 0};
  const LowOrderSolve low2 = low_order_solution(f2, dt, kGamma, 1e-13, &a2);
  std::array<InterfaceField, 3> high2;
  high2[0] = build_interface_fluxes(f2, 0, alpha1, kGamma);
  high2[1] = build_interface_fluxes(f2, 1, a2[1], kGamma);
  const auto lim2 = limit_fluxes(high2, low2, f2, dt, kGamma, bc2.kind, nullptr);

  // recover theta from the density component wherever the blend is active
  for (int fi = 0; fi <= n; ++fi) {
    const double h1 = high1[0].comp[IRHO][fi], l1 = low1.flux[0].comp[IRHO][fi];
    if (std::abs(h1 - l1) < 1e-8) continue;
    const double th1 = (lim1[0].comp[IRHO][fi] - l1) / (h1 - l1);
    const int jmid = ny / 2;
    const std::size_t idx2 = lim2[0].index(fi, jmid, 0);
    const double h2 = high2[0].comp[IRHO][idx2], l2 = low2.flux[0].comp[IRHO][idx2];
    const double th2 = (lim2[0].comp[IRHO][idx2] - l2) / (h2 - l2);
    CHECK(th2 == doctest::Approx(th1).epsilon(1e-13));
  }
}

TEST_CASE("low-order solution: uniform field is a fixed point with eps0 bounds") {
  const Grid g = Grid::make(2, {16, 12, 1}, {0, 0, 0}, {1, 1, 0});
  FieldArray f(g);
  const State8 q0 = prim(1.0, {0.4, -0.2, 0.1}, 0.9, {0.5, 0.2, -0.1});
  for (std::size_t i = 0; i < g.size(); ++i) f.set(i, q0);
  std::array<double, 3> alpha{global_alpha(f, 0, kGamma), global_alpha(f, 1, kGamma), 0};
  const double dt = 0.5 / (alpha[0] / g.dx[0] + alpha[1] / g.dx[1]);
  const LowOrderSolve low = low_order_solution(f, dt, kGamma, 1e-13, &alpha);
  for (int j = g.ibeg(1); j < g.iend(1); ++j)
    for (int i = g.ibeg(0); i < g.iend(0); ++i) {
      const State8 qh = low.qhat.get(g.index(i, j, 0));
      for (int c = 0; c < kNumComp; ++c) CHECK(qh[c] == q0[c]);
    }
  CHECK(low.eps.eps_rho == 1e-13);
  CHECK(low.eps.eps_p == 1e-13);
}

TEST_CASE("low-order solution: 2D blast first step has positive eps bounds") {
  ProblemSpec spec = blast_2d();
  const Grid g = spec.make_grid({64, 64, 1});
  FieldArray f = spec.make_initial_field(g);
  fill_ghost(f, spec.boundary, 0.0);
  std::array<double, 3> alpha{global_alpha(f, 0, kGamma), global_alpha(f, 1, kGamma), 0};
  const double dt = 0.5 / (alpha[0] / g.dx[0] + alpha[1] / g.dx[1]);
  const LowOrderSolve low = low_order_solution(f, dt, kGamma, 1e-13, &alpha);
  CHECK(low.eps.eps_rho > 0.0);
  CHECK(low.eps.eps_p > 0.0);
  CHECK(low.eps.eps_rho <= 1e-13);
  CHECK(low.eps.eps_p <= 1e-13);
}
