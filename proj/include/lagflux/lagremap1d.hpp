#pragma once

#include <array>
#include <vector>

#include "lagflux/grid.hpp"
#include "lagflux/reconstruct.hpp"
#include "lagflux/riemann_hll.hpp"
#include "lagflux/solver.hpp"

namespace lagflux {

// 1D reference solver: Lagrangian finite-volume step followed by a flux-form
// remap (backward convection back to the Eulerian cells, then an Eulerian
// upwind convection step). First order in time by construction; the
// second-order path lives in the Lagrange-flux solver. Serial: this is a
// correctness oracle, not a performance artifact.

// Deformed-cell geometry produced by the Lagrange step. Arrays use grid
// layout; cells g.gx-1 .. g.gx+nx are evolved (one ghost ring) so the remap
// can upwind across the domain boundary. Edge k is the left face of cell k.
struct LagrangianCellGeometry {
  std::vector<double> volume;         // per cell, length in 1D
  std::vector<double> iface_velocity; // u* per edge
  std::vector<double> iface_pressure; // p* per edge
};

// Lagrangian state after the step. Velocity and specific total energy are
// stored directly: the backward convection of the remap keeps them bitwise
// unchanged and only rescales density by the volume ratio.
struct LagrangianField1d {
  std::vector<double> rho;
  std::vector<double> u;
  std::vector<double> v; // tangential, carried along
  std::vector<double> E; // specific total energy
};

struct LagremapOptions {
  int remap_order = 1; // 1: first-order upwind edge states, 2: MUSCL traces
  LimiterParams limiter{1.5};
};

// Lagrange step: edge (p*, u*) from the Lagrangian HLL solver on adjacent
// cell values, volumes |K^L| = dx + dt (u*_R - u*_L), per-cell mass exactly
// conserved, momentum and energy updated by the pressure fluxes p* and p* u*.
// Ghosts of `field` must be filled. Throws StepTooLargeError if any
// Lagrangian volume is not positive.
std::pair<LagrangianField1d, LagrangianCellGeometry>
lagrange_step_1d(const CartesianGrid& g, const CellField& field, double dt, PerfectGasEos eos);

// Flux-form remap: backward convection scales density by |K^L|/|K| (velocity
// and E untouched), then an Eulerian conservative convection step with edge
// velocities u* and upwind (or MUSCL) edge states. Throws StepTooLargeError
// when |u*| dt > dx. When `boundary_conv` is given it receives the convective
// fluxes actually used at the two domain-boundary edges (left, right).
void remap_flux_step_1d(const CartesianGrid& g, const LagrangianField1d& lag,
                        const LagrangianCellGeometry& geom, double dt,
                        const LagremapOptions& opts, CellField& out,
                        std::array<std::array<double, 4>, 2>* boundary_conv = nullptr);

// Time-integrated combined flux through the two domain boundary edges
// (pressure part + convective part), for conservation audits.
struct LagremapStepResult {
  double dt = 0.0;
  std::array<double, 4> boundary_flux_left{};
  std::array<double, 4> boundary_flux_right{};
};

// Composition of the two steps above; algebraically the combined pressure +
// convective flux balance. Fills ghosts itself.
LagremapStepResult lagremap_step_1d(const CartesianGrid& g, const BoundaryCondition& bc,
                                    CellField& field, double dt, PerfectGasEos eos,
                                    const LagremapOptions& opts = {});

} // namespace lagflux
