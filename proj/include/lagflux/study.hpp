#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "lagflux/config.hpp"
#include "lagflux/exact_riemann.hpp"
#include "lagflux/run.hpp"

namespace lagflux::oracle {

// L1 errors of (rho, u, p) for a completed 1D Riemann-initialized run,
// measured against the exact solution sampled at cell centers.
std::array<double, 3> l1_error_vs_exact(const CaseConfig& config, const CartesianGrid& grid,
                                        const CellField& field, double time);

struct ConvergenceRow {
  int n = 0;
  double l1_rho = 0.0;
  double l1_u = 0.0;
  double l1_p = 0.0;
  double order = 0.0; // observed L1(rho) order against the previous row
};

// Run the case on each mesh and tabulate L1 errors against the exact
// solution. The case must use riemann_x initial data.
std::vector<ConvergenceRow> convergence_study(const CaseConfig& config,
                                              const std::vector<int>& meshes);

// CSV: N,L1_rho,L1_u,L1_p,order
void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows);

} // namespace lagflux::oracle
