#include "mhd/problems.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace mhd {

Grid ProblemSpec::make_grid(std::array<int, 3> mesh) const {
  return Grid::make(dims, mesh, lo, hi);
}

FieldArray ProblemSpec::make_initial_field(const Grid& g) const {
  FieldArray f(g);
  for (int k = g.ibeg(2); k < g.iend(2); ++k)
    for (int j = g.ibeg(1); j < g.iend(1); ++j)
      for (int i = g.ibeg(0); i < g.iend(0); ++i) {
        const std::array<double, 3> x = {g.pos(0, i), g.dims > 1 ? g.pos(1, j) : 0.0,
                                         g.dims > 2 ? g.pos(2, k) : 0.0};
        f.set(g.index(i, j, k), init_state(x).to_array());
      }
  return f;
}

MagneticPotential ProblemSpec::make_initial_potential(const Grid& g) const {
  MagneticPotential A = MagneticPotential::make(g);
  if (!init_potential) return A;
  for (int k = g.ibeg(2); k < g.iend(2); ++k)
    for (int j = g.ibeg(1); j < g.iend(1); ++j)
      for (int i = g.ibeg(0); i < g.iend(0); ++i) {
        const std::array<double, 3> x = {g.pos(0, i), g.dims > 1 ? g.pos(1, j) : 0.0,
                                         g.dims > 2 ? g.pos(2, k) : 0.0};
        const auto av = init_potential(x);
        const std::size_t idx = g.index(i, j, k);
        if (A.ncomp == 1)
          A.a[0][idx] = av[2];
        else
          for (int c = 0; c < 3; ++c) A.a[c][idx] = av[c];
      }
  return A;
}

namespace {

Boundary uniform_boundary(BcKind kind) {
  Boundary bc;
  for (int a = 0; a < 3; ++a) bc.kind[a] = {kind, kind};
  return bc;
}

constexpr double kGamma = 5.0 / 3.0;

}  // namespace

ProblemSpec vacuum_shock_tube_1d() {
  ProblemSpec p;
  p.name = "vacuum-shock-1d";
  p.dims = 1;
  p.default_mesh = {200, 1, 1};
  p.lo = {-0.5, 0, 0};
  p.hi = {0.5, 0, 0};
  p.t_final = 0.1;
  p.boundary = uniform_boundary(BcKind::ZeroOrder);
  p.init_state = [](std::array<double, 3> x) {
    PrimitiveState w;
    if (x[0] < 0.0) {
      w.rho = 1e-12;
      w.p = 1e-12;
    } else {
      w.rho = 1.0;
      w.p = 0.5;
      w.b = {0.0, 1.0, 0.0};
    }
    return to_conserved(w, kGamma);
  };
  return p;
}

ProblemSpec torsional_alfven_pulse() {
  ProblemSpec p;
  p.name = "alfven-pulse";
  p.dims = 1;
  p.default_mesh = {800, 1, 1};
  p.lo = {-0.5, 0, 0};
  p.hi = {0.5, 0, 0};
  p.t_final = 0.156;
  p.boundary = uniform_boundary(BcKind::Periodic);
  p.init_state = [](std::array<double, 3> x) {
    const double delta = 0.005;
    const double phi = (M_PI / 8.0) * std::tanh((0.25 + x[0]) / delta + 1.0) *
                       std::tanh((0.25 - x[0]) / delta + 1.0);
    PrimitiveState w;
    w.rho = 1.0;
    w.u = {10.0, 10.0 * std::cos(phi), 10.0 * std::sin(phi)};
    w.p = 0.01;
    w.b = {-10.0 * std::cos(phi), -10.0 * std::sin(phi), 0.0};
    return to_conserved(w, kGamma);
  };
  return p;
}

namespace {

constexpr double kVortexMu = 5.389489439;
const double kVortexKappa = std::sqrt(2.0) * kVortexMu;

}  // namespace

PrimitiveState vortex_primitive(double x, double y) {
  const double r2 = x * x + y * y;
  const double ex = std::exp(0.5 * (1.0 - r2));
  PrimitiveState w;
  w.rho = 1.0;
  w.u = {1.0 - kVortexKappa / (2.0 * M_PI) * ex * y, 1.0 + kVortexKappa / (2.0 * M_PI) * ex * x,
         0.0};
  w.b = {-kVortexMu / (2.0 * M_PI) * ex * y, kVortexMu / (2.0 * M_PI) * ex * x, 0.0};
  w.p = 1.0 + (kVortexMu * kVortexMu * (1.0 - r2) - kVortexKappa * kVortexKappa) /
                  (8.0 * M_PI * M_PI) * ex * ex;
  return w;
}

double vortex_potential(double x, double y) {
  const double r2 = x * x + y * y;
  return kVortexMu / (2.0 * M_PI) * std::exp(0.5 * (1.0 - r2));
}

ProblemSpec smooth_vortex_2d() {
  ProblemSpec p;
  p.name = "smooth-vortex";
  p.dims = 2;
  p.default_mesh = {80, 80, 1};
  p.lo = {-10, -10, 0};
  p.hi = {10, 10, 0};
  p.t_final = 0.05;
  p.uses_ct = true;
  p.boundary = uniform_boundary(BcKind::Periodic);
  p.init_state = [](std::array<double, 3> x) {
    return to_conserved(vortex_primitive(x[0], x[1]), kGamma);
  };
  p.init_potential = [](std::array<double, 3> x) {
    return std::array<double, 3>{0.0, 0.0, vortex_potential(x[0], x[1])};
  };
  return p;
}

ProblemSpec blast_2d() {
  ProblemSpec p;
  p.name = "blast-2d";
  p.dims = 2;
  p.default_mesh = {256, 256, 1};
  p.lo = {-0.5, -0.5, 0};
  p.hi = {0.5, 0.5, 0};
  p.t_final = 0.01;
  p.uses_ct = true;
  p.boundary = uniform_boundary(BcKind::ZeroOrder);
  const double b0 = 100.0 / std::sqrt(2.0 * M_PI);
  p.init_state = [b0](std::array<double, 3> x) {
    PrimitiveState w;
    w.rho = 1.0;
    w.p = (x[0] * x[0] + x[1] * x[1] < 0.1 * 0.1) ? 1000.0 : 0.1;
    w.b = {b0, b0, 0.0};
    return to_conserved(w, kGamma);
  };
  p.init_potential = [b0](std::array<double, 3> x) {
    return std::array<double, 3>{0.0, 0.0, b0 * (x[1] - x[0])};
  };
  return p;
}

ProblemSpec blast_3d() {
  ProblemSpec p;
  p.name = "blast-3d";
  p.dims = 3;
  p.default_mesh = {64, 64, 64};
  p.lo = {-0.5, -0.5, -0.5};
  p.hi = {0.5, 0.5, 0.5};
  p.t_final = 0.01;
  p.uses_ct = true;
  p.boundary = uniform_boundary(BcKind::ZeroOrder);
  const double b0 = 100.0 / std::sqrt(4.0 * M_PI) / std::sqrt(2.0);
  p.init_state = [b0](std::array<double, 3> x) {
    PrimitiveState w;
    w.rho = 1.0;
    w.p = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] < 0.1 * 0.1) ? 1000.0 : 0.1;
    w.b = {b0, b0, 0.0};
    return to_conserved(w, kGamma);
  };
  p.init_potential = [b0](std::array<double, 3> x) {
    return std::array<double, 3>{0.0, 0.0, b0 * (x[1] - x[0])};
  };
  return p;
}

// ---------------------------------------------------------------------------
// rotated vacuum shock tube

RotatedReference::RotatedReference(int n_cells, double t_final, int snapshots, double cfl,
                                   double gamma, double eps0) {
  n_ = n_cells;
  t_final_ = t_final;
  lo_ = -1.0;
  dx_ = 2.0 / n_cells;

  // unrotated problem on the wide domain [-1, 1]
  ProblemSpec base = vacuum_shock_tube_1d();
  base.lo = {-1.0, 0, 0};
  base.hi = {1.0, 0, 0};
  Grid g = base.make_grid({n_cells, 1, 1});
  FieldArray f = base.make_initial_field(g);

  RunParams rp;
  rp.gamma = gamma;
  rp.cfl = cfl;
  rp.limiter = true;
  rp.eps0 = eps0;
  Stepper stepper(rp, base.boundary);

  const double dt_snap = t_final / snapshots;
  times_.reserve(snapshots + 1);
  snaps_.reserve(snapshots + 1);

  auto store = [&](const FieldArray& field, double t) {
    std::vector<double> snap(static_cast<std::size_t>(n_) * 9, 0.0);
    for (int c = 0; c < kNumComp; ++c) {
      const double* v = field.data(c);
      for (int i = 0; i < n_; ++i)
        snap[static_cast<std::size_t>(c) * n_ + i] = v[g.index(g.ibeg(0) + i, 0, 0)];
    }
    // potential from B_par = -dA/dxi, anchored at zero on the left (vacuum)
    double acc = 0.0;
    const double* bpar = field.data(IBY);
    double prev = bpar[g.index(g.ibeg(0), 0, 0)];
    snap[static_cast<std::size_t>(8) * n_ + 0] = 0.0;
    for (int i = 1; i < n_; ++i) {
      const double cur = bpar[g.index(g.ibeg(0) + i, 0, 0)];
      acc -= 0.5 * (prev + cur) * dx_;
      snap[static_cast<std::size_t>(8) * n_ + i] = acc;
      prev = cur;
    }
    times_.push_back(t);
    snaps_.push_back(std::move(snap));
  };

  double t = 0.0;
  store(f, t);
  for (int s = 1; s <= snapshots; ++s) {
    const double target = s * dt_snap;
    while (t < target - 1e-14 * t_final) {
      double dt = compute_dt(f, cfl, gamma);
      dt = std::min(dt, target - t);
      f = stepper.step(f, t, dt, nullptr);
      t += dt;
    }
    store(f, target);
  }
}

RotatedReference::Sample RotatedReference::sample(double t, double xi) const {
  if (t > t_final_ * (1.0 + 1e-12))
    throw std::out_of_range("RotatedReference: time beyond reference horizon");
  t = std::clamp(t, 0.0, t_final_);
  // bracketing snapshots, linear in time
  const double dt_snap = t_final_ / (times_.size() - 1);
  const int s0 = std::min(static_cast<int>(t / dt_snap), static_cast<int>(times_.size()) - 2);
  const double wt = std::clamp((t - times_[s0]) / dt_snap, 0.0, 1.0);

  // cubic Lagrange in xi on the uniform reference grid
  const double xloc = (xi - (lo_ + 0.5 * dx_)) / dx_;
  int i1 = static_cast<int>(std::floor(xloc));
  i1 = std::clamp(i1, 1, n_ - 3);
  const double s = xloc - i1;
  const double w0 = -s * (s - 1.0) * (s - 2.0) / 6.0;
  const double w1 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
  const double w2 = -(s + 1.0) * s * (s - 2.0) / 2.0;
  const double w3 = (s + 1.0) * s * (s - 1.0) / 6.0;

  auto interp = [&](const std::vector<double>& snap, int comp) {
    const double* v = snap.data() + static_cast<std::size_t>(comp) * n_;
    return w0 * v[i1 - 1] + w1 * v[i1] + w2 * v[i1 + 1] + w3 * v[i1 + 2];
  };

  Sample out{};
  for (int c = 0; c < 9; ++c) {
    const double a = interp(snaps_[s0], c);
    const double b = interp(snaps_[s0 + 1], c);
    const double val = (1.0 - wt) * a + wt * b;
    if (c < 8)
      out.q[c] = val;
    else
      out.a = val;
  }
  return out;
}

namespace {

struct RotatedFrame {
  double ca, sa;  // cos/sin of the rotation angle
  State8 to_xy(const State8& q1d) const {
    State8 q = q1d;
    q[IMX] = q1d[IMX] * ca - q1d[IMY] * sa;
    q[IMY] = q1d[IMX] * sa + q1d[IMY] * ca;
    q[IBX] = q1d[IBX] * ca - q1d[IBY] * sa;
    q[IBY] = q1d[IBX] * sa + q1d[IBY] * ca;
    return q;
  }
};

}  // namespace

void rotated_bc_fill(FieldArray& f, double t, const RotatedReference& ref, double angle) {
  const Grid& g = f.grid;
  const RotatedFrame fr{std::cos(angle), std::sin(angle)};
  // fill the y-direction ghost bands over the full x extent (corners included)
  for (int side = 0; side < 2; ++side) {
    const int jb = side == 0 ? 0 : g.iend(1);
    const int je = side == 0 ? g.ibeg(1) : g.ext(1);
    for (int j = jb; j < je; ++j)
      for (int i = 0; i < g.ext(0); ++i) {
        const double x = g.pos(0, i), y = g.pos(1, j);
        const double xi = x * fr.ca + y * fr.sa;
        const auto s = ref.sample(t, xi);
        f.set(g.index(i, j, g.ibeg(2)), fr.to_xy(s.q));
      }
  }
}

void rotated_bc_fill_potential(MagneticPotential& A, double t, const RotatedReference& ref,
                               double angle) {
  const Grid& g = A.grid;
  const RotatedFrame fr{std::cos(angle), std::sin(angle)};
  for (int side = 0; side < 2; ++side) {
    const int jb = side == 0 ? 0 : g.iend(1);
    const int je = side == 0 ? g.ibeg(1) : g.ext(1);
    for (int j = jb; j < je; ++j)
      for (int i = 0; i < g.ext(0); ++i) {
        const double x = g.pos(0, i), y = g.pos(1, j);
        const double xi = x * fr.ca + y * fr.sa;
        A.a[0][g.index(i, j, g.ibeg(2))] = ref.sample(t, xi).a;
      }
  }
}

ProblemSpec rotated_vacuum_shock_tube(int reference_cells, int reference_snapshots) {
  ProblemSpec p;
  p.name = "rotated-shock-2d";
  p.dims = 2;
  p.default_mesh = {240, 100, 1};
  p.lo = {-0.6, -0.25, 0};
  p.hi = {0.6, 0.25, 0};
  p.t_final = 0.1;
  p.uses_ct = true;

  const double angle = std::atan(0.5);
  const double ca = std::cos(angle), sa = std::sin(angle);

  p.boundary.kind[0] = {BcKind::ZeroOrder, BcKind::ZeroOrder};
  p.boundary.kind[1] = {BcKind::Custom, BcKind::Custom};

  // lazily built shared reference (first touch pays the 1D run)
  auto ref = std::make_shared<std::unique_ptr<RotatedReference>>();
  auto once = std::make_shared<std::once_flag>();
  const double tf = p.t_final;
  auto get_ref = [ref, once, reference_cells, reference_snapshots, tf]() -> RotatedReference& {
    std::call_once(*once, [&] {
      *ref = std::make_unique<RotatedReference>(reference_cells, tf, reference_snapshots, 0.5,
                                                kGamma, 1e-13);
    });
    return **ref;
  };

  p.boundary.custom_state = [get_ref, angle](FieldArray& f, double t) {
    rotated_bc_fill(f, t, get_ref(), angle);
  };
  p.boundary.custom_potential = [get_ref, angle](MagneticPotential& A, double t) {
    rotated_bc_fill_potential(A, t, get_ref(), angle);
  };

  p.init_state = [ca, sa](std::array<double, 3> x) {
    const double xi = x[0] * ca + x[1] * sa;
    PrimitiveState w;
    if (xi < 0.0) {
      w.rho = 1e-12;
      w.p = 1e-12;
    } else {
      w.rho = 1.0;
      w.p = 0.5;
      // (B_perp, B_par) = (0, 1) rotated into (x, y)
      w.b = {-sa, ca, 0.0};
    }
    return to_conserved(w, kGamma);
  };
  p.init_potential = [ca, sa](std::array<double, 3> x) {
    const double xi = x[0] * ca + x[1] * sa;
    return std::array<double, 3>{0.0, 0.0, xi <= 0.0 ? 0.0 : -xi};
  };
  return p;
}

ProblemSpec problem_by_name(const std::string& name) {
  if (name == "vacuum-shock-1d") return vacuum_shock_tube_1d();
  if (name == "alfven-pulse") return torsional_alfven_pulse();
  if (name == "smooth-vortex") return smooth_vortex_2d();
  if (name == "rotated-shock-2d") return rotated_vacuum_shock_tube();
  if (name == "blast-2d") return blast_2d();
  if (name == "blast-3d") return blast_3d();
  throw std::invalid_argument("unknown problem: " + name);
}

std::vector<std::string> problem_names() {
  return {"vacuum-shock-1d", "alfven-pulse",  "smooth-vortex",
          "rotated-shock-2d", "blast-2d", "blast-3d"};
}

}  // namespace mhd
