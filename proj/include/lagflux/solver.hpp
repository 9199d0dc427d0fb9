#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "lagflux/euler.hpp"
#include "lagflux/grid.hpp"
#include "lagflux/multimat.hpp"
#include "lagflux/reconstruct.hpp"
#include "lagflux/riemann_hll.hpp"

namespace lagflux {

// Numerical flux attached to an Eulerian edge, per unit edge length and time.
struct EdgeFlux {
  double mass = 0.0;
  double mom_x = 0.0;
  double mom_y = 0.0;
  double energy = 0.0;
};

// Lagrange-flux edge flux: contact pressure/velocity from the Lagrangian HLL
// solver, conserved quantities upwinded by the sign of u*, pressure terms
// carried by the normal:
//   flux_l = U_l(upwind) u* + pi_l(p*, u*) . n
// At u* == 0 the conserved interface state is the arithmetic mean of the two
// traces, which keeps the flux continuous in the data.
EdgeFlux edge_flux(const PrimitiveState& w_minus, const PrimitiveState& w_plus, Vec2 n,
                   PerfectGasEos eos_minus, PerfectGasEos eos_plus);

inline EdgeFlux edge_flux(const PrimitiveState& w_minus, const PrimitiveState& w_plus, Vec2 n,
                          PerfectGasEos eos) {
  return edge_flux(w_minus, w_plus, n, eos, eos);
}

struct TimeControls {
  double cfl = 0.25;
  double t_final = 0.0;
  std::int64_t max_steps = std::numeric_limits<std::int64_t>::max();
};

struct SchemeParams {
  LimiterParams limiter{1.5};
  int spatial_order = 2; // 1: cell-constant traces, 2: MUSCL
  int time_order = 2;    // 1: forward Euler (predictor only), 2: Heun
};

struct StepDiagnostics {
  std::int64_t step = 0;
  double time = 0.0;
  double dt = 0.0;
  double min_rho = 0.0;
  double min_p = 0.0;
};

struct SolverState {
  CellField field;
  double time = 0.0;
  std::int64_t step = 0;
  std::vector<StepDiagnostics> diagnostics;
  // Net time-integrated outflow through the domain boundary, per component;
  // interior change plus this is conserved.
  std::array<double, 4> boundary_outflow{0.0, 0.0, 0.0, 0.0};
};

// CFL time step: dt = cfl / max_K sum_d (|u_d| + c)/dx_d, clipped so that
// time + dt never passes `limit_time`.
double compute_dt(const CartesianGrid& g, const CellField& field, PerfectGasEos eos,
                  const TimeControls& controls, double time, double limit_time);

// Two-stage Heun integrator for the Lagrange-flux scheme on a Cartesian grid,
// with optional multimaterial mass-fraction transport riding the same stage
// fluxes. Owns all scratch buffers; bitwise deterministic for any thread
// count (per-edge flux storage, fixed gather order).
class LagfluxSolver {
public:
  LagfluxSolver(const CartesianGrid& g, const BoundaryCondition& bc, PerfectGasEos eos,
                SchemeParams params, int threads = 1, const MaterialSet* materials = nullptr);

  // One first-order stage: ghosts of `in` are (re)filled, `out` receives
  // U - dt/|K| sum |A| flux. Interior cells of `in` are untouched.
  void euler_stage(CellField& in, double dt, CellField& out, std::int64_t step = -1);

  // Full predictor-corrector step (or forward Euler when time_order == 1).
  // Computes dt itself, advances state.time, records diagnostics and the
  // boundary flux integral. Returns the dt taken.
  double heun_step(SolverState& state, const TimeControls& controls, double limit_time,
                   MaterialCells* materials = nullptr);

  double compute_dt(const CellField& field, const TimeControls& controls, double time,
                    double limit_time) const;

  const CartesianGrid& grid() const { return grid_; }
  int threads() const { return threads_; }

private:
  struct FluxSet {
    std::array<std::vector<double>, 4> x; // (nx+1) * ny per component
    std::array<std::vector<double>, 4> y; // nx * (ny+1) per component
    std::vector<double> ustar_x;
    std::vector<double> ustar_y;
  };

  void fill_all_ghosts(CellField& field, MaterialCells* mat, int stage_slot);
  void build_primitives(const CellField& field, int stage_slot, std::int64_t step);
  void compute_fluxes(FluxSet& fs, int stage_slot, std::int64_t step);
  void apply_update(const CellField& base, const FluxSet& a, const FluxSet* b, double dt,
                    CellField& out, std::int64_t step, double* min_rho, double* min_p);
  void update_partials(const MaterialCells& base, const FluxSet& a, const FluxSet* b, double dt,
                       int slot_a, int slot_b, MaterialCells& out);
  void accumulate_boundary_outflow(const FluxSet& a, const FluxSet* b, double dt,
                                   std::array<double, 4>& acc) const;

  CartesianGrid grid_;
  BoundaryCondition bc_;
  PerfectGasEos eos_;
  SchemeParams params_;
  int threads_;
  const MaterialSet* material_set_;

  // slot 0: stage input U^n, slot 1: predictor U*
  std::array<std::array<std::vector<double>, 4>, 2> prim_; // rho,u,v,p over all cells
  std::array<std::vector<double>, 2> gamma_;               // per-cell effective gamma
  std::array<std::vector<std::vector<double>>, 2> frac_;   // per-material fractions
  FluxSet flux1_, flux2_;
  CellField predictor_;
  MaterialCells predictor_mat_;
};

} // namespace lagflux
