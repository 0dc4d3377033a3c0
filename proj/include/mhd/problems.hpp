#ifndef MHD_PROBLEMS_HPP_
#define MHD_PROBLEMS_HPP_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mhd/integrator.hpp"

namespace mhd {

// High-resolution 1D solution of the unrotated vacuum shock tube on a wide
// domain, stored as time snapshots; samples interpolate cubically in xi and
// linearly in time. Supplies the "exact shock motion" ghost data of the
// rotated problem, including the advected scalar potential (reconstructed from
// the parallel field component, anchored at zero in the left vacuum).
class RotatedReference {
 public:
  RotatedReference(int n_cells, double t_final, int snapshots, double cfl, double gamma,
                   double eps0);

  struct Sample {
    State8 q;  // conserved state in the (perp, par, z) frame
    double a;  // scalar potential value
  };
  Sample sample(double t, double xi) const;
  double horizon() const { return t_final_; }
  int cells() const { return n_; }

 private:
  int n_;
  double t_final_;
  double lo_, dx_;
  std::vector<double> times_;
  // per snapshot: 8 conserved components then A, each over n_ points
  std::vector<std::vector<double>> snaps_;
};

struct ProblemSpec {
  std::string name;
  int dims = 1;
  std::array<int, 3> default_mesh{200, 1, 1};
  std::array<double, 3> lo{0, 0, 0};
  std::array<double, 3> hi{1, 1, 1};
  double t_final = 0.1;
  double gamma = 5.0 / 3.0;
  bool uses_ct = false;
  Boundary boundary;
  std::function<ConservedState(std::array<double, 3>)> init_state;
  // full vector (Ax, Ay, Az); 2D problems use only the z component
  std::function<std::array<double, 3>(std::array<double, 3>)> init_potential;

  Grid make_grid(std::array<int, 3> mesh) const;
  FieldArray make_initial_field(const Grid& g) const;
  MagneticPotential make_initial_potential(const Grid& g) const;
};

ProblemSpec vacuum_shock_tube_1d();
ProblemSpec torsional_alfven_pulse();
ProblemSpec smooth_vortex_2d();
// The reference is built lazily on the first boundary fill.
ProblemSpec rotated_vacuum_shock_tube(int reference_cells = 4000, int reference_snapshots = 200);
ProblemSpec blast_2d();
ProblemSpec blast_3d();

ProblemSpec problem_by_name(const std::string& name);
std::vector<std::string> problem_names();

// Ghost fill for the "exact shock motion" sides of the rotated problem:
// every ghost point takes the rotated 1D reference sampled at its xi.
void rotated_bc_fill(FieldArray& f, double t, const RotatedReference& ref, double angle);
void rotated_bc_fill_potential(MagneticPotential& A, double t, const RotatedReference& ref,
                               double angle);

// Smooth vortex pieces shared with the convergence study.
PrimitiveState vortex_primitive(double x, double y);
double vortex_potential(double x, double y);

}  // namespace mhd

#endif  // MHD_PROBLEMS_HPP_
