#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lagflux/advect.hpp"
#include "lagflux/config.hpp"
#include "lagflux/lagremap1d.hpp"
#include "lagflux/solver.hpp"

namespace lagflux {

struct RunSummary {
  std::int64_t steps = 0;
  double final_time = 0.0;
  bool truncated_by_max_steps = false;
  double min_rho = 0.0;
  double min_p = 0.0;
  // scalar advection runs: extrema of z over every step
  double min_scalar = 0.0;
  double max_scalar = 0.0;
  std::vector<std::string> dump_paths;
  std::string diagnostics_path;
};

// Fill a conserved field (and partial masses, if materials are configured)
// from the case's initial-condition spec. Throws ConfigError for region
// layouts that leave cells uncovered or doubly covered.
void initialize_hydro(const CaseConfig& config, const CartesianGrid& g, CellField& field,
                      MaterialCells* mat);

void initialize_scalar(const CaseConfig& config, const CartesianGrid& g, ScalarField& z);

// Exact cell average of the density-wave profile, shared by the initializer
// and convergence references.
double density_wave_cell_average(const CaseConfig& config, double xc, double yc, double dx,
                                 double dy, double time);

struct HydroRun {
  CartesianGrid grid;
  SolverState state;
  std::optional<MaterialSet> materials;
  std::optional<MaterialCells> material_cells;
  RunSummary summary;
};

struct AdvectRun {
  CartesianGrid grid;
  ScalarField initial;
  ScalarField z;
  double time = 0.0;
  RunSummary summary;
};

// Advance a hydro case (lagflux or lagremap1d) to t_final or max_steps.
// When `write_outputs` is set, CSV dumps and the diagnostics log are written
// under the config's output prefix; on a solver failure the diagnostics
// collected so far are serialized before the error propagates.
HydroRun run_hydro_case(const CaseConfig& config, bool write_outputs);

AdvectRun run_advect_case(const CaseConfig& config, bool write_outputs);

// Dispatch on config.solver; always writes outputs.
RunSummary run_case(const CaseConfig& config);

} // namespace lagflux
