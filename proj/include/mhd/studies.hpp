#ifndef MHD_STUDIES_HPP_
#define MHD_STUDIES_HPP_

#include <iosfwd>

#include "mhd/output.hpp"

namespace mhd {

// Full problem run with frame/diagnostics files under cfg.out_dir.
// Exit status: 0 success, 2 solver abort, 3 config error.
int run_problem(const RunConfig& cfg, std::ostream& log);

// Smooth-vortex accuracy study against the exact translated solution.
struct ConvergenceTable {
  std::vector<int> meshes;
  static constexpr const char* quantity_names[4] = {"ux", "uy", "Bx", "By"};
  // [quantity][mesh index]
  std::array<std::vector<double>, 4> l1, linf;
  // observed orders between successive doubling meshes; empty if the mesh
  // sequence does not double
  std::array<std::vector<double>, 4> l1_order, linf_order;
};

ConvergenceTable convergence_study(const std::vector<int>& meshes, bool limiter = true,
                                   double cfl = 0.5, std::ostream* log = nullptr);
void print_convergence(const ConvergenceTable& t, std::ostream& os);

// The four-scheme comparison on the 2D blast problem. Positivity is checked
// at each accepted time step; stability means the run reached t_final.
struct SchemeComparison {
  struct Row {
    std::string scheme;
    bool positivity = false;
    bool stability = false;
  };
  int mesh = 0;
  std::vector<Row> rows;
  const Row& row(const std::string& scheme) const;
};

SchemeComparison compare_schemes(int mesh, double t_final = 0.01, std::ostream* log = nullptr);
void print_comparison(const SchemeComparison& c, std::ostream& os);

}  // namespace mhd

#endif  // MHD_STUDIES_HPP_
