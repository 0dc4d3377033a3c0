#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mhd/flux.hpp"
#include "mhd/weno.hpp"
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

State8 swap_xy(const State8& q) {
  State8 s = q;
  std::swap(s[IMX], s[IMY]);
  std::swap(s[IBX], s[IBY]);
  return s;
}

}  // namespace

TEST_CASE("physical flux: static gas gives a pure pressure flux") {
  const State8 q = prim(1.0, {0, 0, 0}, 1.0, {0, 0, 0});
  const State8 f = physical_flux(q, 0, kGamma);
  const State8 expect{0, 1, 0, 0, 0, 0, 0, 0};
  for (int c = 0; c < kNumComp; ++c) CHECK(f[c] == doctest::Approx(expect[c]).epsilon(1e-14));
  const State8 fy = physical_flux(q, 1, kGamma);
  CHECK(fy[IMY] == doctest::Approx(1.0));
  CHECK(fy[IMX] == doctest::Approx(0.0));
}

TEST_CASE("physical flux: frozen oracle values for a moving magnetized state") {
  // independently evaluated from the flux formula
  const State8 q = prim(1.0, {1, 0, 0}, 1.0, {0, 1, 0});
  CHECK(q[IEN] == doctest::Approx(2.5).epsilon(1e-15));
  const State8 f = physical_flux(q, 0, kGamma);
  CHECK(f[IRHO] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f[IMX] == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(f[IMY] == doctest::Approx(0.0));
  CHECK(f[IEN] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(f[IBX] == 0.0);
  CHECK(f[IBY] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("physical flux: normal-B component is identically zero") {
  for (int trial = 0; trial < 10000; ++trial) {
    const State8 q = oracles::random_admissible();
    for (int d = 0; d < 3; ++d) CHECK(physical_flux(q, d, kGamma)[IBX + d] == 0.0);
  }
}

TEST_CASE("physical flux: x<->y swap covariance") {
  for (int trial = 0; trial < 1000; ++trial) {
    const State8 q = oracles::random_admissible();
    const State8 fy = physical_flux(q, 1, kGamma);
    const State8 fx_swapped = swap_xy(physical_flux(swap_xy(q), 0, kGamma));
    for (int c = 0; c < kNumComp; ++c)
      CHECK(fy[c] == doctest::Approx(fx_swapped[c]).epsilon(1e-13));
  }
}

TEST_CASE("fast speed: frozen examples") {
  PrimitiveState w;
  w.rho = 1.0;
  w.p = 1.0;
  CHECK(fast_speed(w, 0, kGamma) == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-14));

  w.p = 0.6;
  w.b = {1, 0, 0};
  CHECK(fast_speed(w, 0, kGamma) == doctest::Approx(1.0).epsilon(1e-14));

  w.rho = 4.0;
  w.p = 0.0;
  w.b = {2, 0, 0};
  CHECK(fast_speed(w, 1, kGamma) == doctest::Approx(1.0).epsilon(1e-14));

  w.rho = -1.0;
  CHECK_THROWS_AS(fast_speed(w, 0, kGamma), std::domain_error);
}

TEST_CASE("fast speed agrees with the dispersion-relation oracle") {
  for (int trial = 0; trial < 3000; ++trial) {
    PrimitiveState w;
    w.rho = oracles::uniform(0.05, 5.0);
    w.p = oracles::uniform(0.0, 5.0);
    for (int d = 0; d < 3; ++d) w.b[d] = oracles::uniform(-3, 3);
    for (int d = 0; d < 3; ++d) {
      const double cf = fast_speed(w, d, kGamma);
      const double ref = oracles::dispersion_fast_speed(w.rho, w.p, w.b, d, kGamma);
      CHECK(cf == doctest::Approx(ref).epsilon(1e-12));
      const double a = std::sqrt(kGamma * w.p / w.rho);
      const double cad = std::abs(w.b[d]) / std::sqrt(w.rho);
      CHECK(cf >= a * (1 - 1e-13));
      CHECK(cf >= cad * (1 - 1e-13));
    }
  }
}

TEST_CASE("global alpha: uniform field, single cell, random brute force") {
  const Grid g1 = Grid::make(1, {32, 1, 1}, {0, 0, 0}, {1, 0, 0});
  FieldArray f(g1);
  const State8 q0 = prim(1.0, {0, 0, 0}, 1.0, {0, 0, 0});
  for (std::size_t i = 0; i < g1.size(); ++i) f.set(i, q0);
  CHECK(global_alpha(f, 0, kGamma) == doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-14));

  const Grid gs = Grid::make(1, {1, 1, 1}, {0, 0, 0}, {1, 0, 0});
  FieldArray fs(gs);
  const State8 q1 = prim(0.7, {2, 0.5, 0}, 0.3, {0.4, -1, 0.2});
  for (std::size_t i = 0; i < gs.size(); ++i) fs.set(i, q1);
  PrimitiveState w1 = to_primitive(ConservedState::from_array(q1), kGamma);
  CHECK(global_alpha(fs, 0, kGamma) ==
        doctest::Approx(std::abs(w1.u[0]) + fast_speed(w1, 0, kGamma)).epsilon(1e-14));

  const Grid g2 = Grid::make(2, {12, 9, 1}, {0, 0, 0}, {1, 1, 0});
  FieldArray f2(g2);
  double brute[2] = {0, 0};
  for (int j = g2.ibeg(1); j < g2.iend(1); ++j)
    for (int i = g2.ibeg(0); i < g2.iend(0); ++i) {
      const State8 q = oracles::random_admissible();
      f2.set(g2.index(i, j, 0), q);
      const PrimitiveState w = to_primitive(ConservedState::from_array(q), kGamma);
      for (int d = 0; d < 2; ++d)
        brute[d] = std::max(brute[d], std::abs(w.u[d]) + fast_speed(w, d, kGamma));
    }
  for (int d = 0; d < 2; ++d)
    CHECK(global_alpha(f2, d, kGamma) == doctest::Approx(brute[d]).epsilon(1e-13));
}

TEST_CASE("eigensystem: hydrodynamic limit collapses to the gasdynamic set") {
  const State8 q = prim(1.3, {0.4, -0.2, 0.1}, 0.8, {0, 0, 0});
  const EigenSystem es = eigensystem(q, q, 0, kGamma);
  const double a = std::sqrt(kGamma * 0.8 / 1.3);
  CHECK(es.lambda[0] == doctest::Approx(0.4 - a).epsilon(1e-13));
  CHECK(es.lambda[6] == doctest::Approx(0.4 + a).epsilon(1e-13));
  for (int k = 1; k <= 5; ++k) CHECK(es.lambda[k] == doctest::Approx(0.4).epsilon(1e-13));
}

TEST_CASE("eigensystem: left.right = I for random admissible pairs") {
  for (int trial = 0; trial < 1000; ++trial) {
    const State8 qL = oracles::random_admissible();
    const State8 qR = oracles::random_admissible();
    const int dir = trial % 3;
    const EigenSystem es = eigensystem(qL, qR, dir, kGamma);
    for (int r = 0; r < 7; ++r)
      for (int c = 0; c < 7; ++c) {
        double s = 0;
        for (int m = 0; m < 7; ++m) s += es.left[r][m] * es.right[m][c];
        CHECK(std::abs(s - (r == c ? 1.0 : 0.0)) < 1e-11);
      }
  }
}

TEST_CASE("eigensystem: reconstructs the finite-difference flux Jacobian") {
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    State8 q = oracles::random_admissible();
    // exercise the degenerate branches too
    if (trial % 5 == 1) q[IBY] = q[IBZ] = 0.0;
    if (trial % 5 == 2) q[IBX] = 0.0;
    if (trial % 5 == 3) q[IBX] = q[IBY] = q[IBZ] = 0.0;
    const int dir = trial % 3;
    const EigenSystem es = eigensystem(q, q, dir, kGamma);
    const auto J = oracles::fd_jacobian7(q, dir, kGamma);
    double scale = 1.0;
    for (int r = 0; r < 7; ++r)
      for (int c = 0; c < 7; ++c) scale = std::max(scale, std::abs(J[r][c]));
    for (int r = 0; r < 7; ++r)
      for (int c = 0; c < 7; ++c) {
        double s = 0;
        for (int m = 0; m < 7; ++m) s += es.right[r][m] * es.lambda[m] * es.left[m][c];
        CHECK(std::abs(s - J[r][c]) < 1e-5 * scale);  // FD oracle accuracy bound
      }
    ++checked;
  }
  CHECK(checked == 400);
}

TEST_CASE("eigensystem: eigenvalues real, finite, bounded by |u|+cf") {
  for (int trial = 0; trial < 2000; ++trial) {
    const State8 q = oracles::random_admissible();
    const int dir = trial % 3;
    const EigenSystem es = eigensystem(q, q, dir, kGamma);
    const PrimitiveState w = to_primitive(ConservedState::from_array(q), kGamma);
    const double bound =
        (std::abs(w.u[dir]) + fast_speed(w, dir, kGamma)) * (1 + 1e-12) + 1e-12;
    for (int k = 0; k < 7; ++k) {
      CHECK(std::isfinite(es.lambda[k]));
      CHECK(std::abs(es.lambda[k]) <= bound);
    }
  }
}

TEST_CASE("eigensystem continuity through Bperp -> 0 in the projected flux") {
  // the projected interface flux must be insensitive to the sign of a
  // vanishing transverse field
  const Grid g = Grid::make(1, {16, 1, 1}, {0, 0, 0}, {1, 0, 0});
  Boundary bc;

  auto projected_flux = [&](double bperp) {
    FieldArray f(g);
    for (int i = g.ibeg(0); i < g.iend(0); ++i) {
      const double x = g.pos(0, i);
      const State8 q =
          prim(1.0 + 0.1 * std::sin(2 * M_PI * x), {0.3, 0.1 * std::cos(2 * M_PI * x), 0.05},
               1.0 + 0.05 * std::sin(4 * M_PI * x), {0.8, bperp, 0.0});
      f.set(g.index(i, 0, 0), q);
    }
    fill_ghost(f, bc, 0.0);
    const double alpha = global_alpha(f, 0, kGamma);
    return build_interface_fluxes(f, 0, alpha, kGamma);
  };

  const InterfaceField fp = projected_flux(+1e-10);
  const InterfaceField fm = projected_flux(-1e-10);
  for (std::size_t i = 0; i < fp.size(); ++i)
    for (int c = 0; c < kNumComp; ++c) {
      const double scale = std::abs(fp.comp[c][i]) + 1.0;
      CHECK(std::abs(fp.comp[c][i] - fm.comp[c][i]) < 1e-6 * scale);
    }
}
