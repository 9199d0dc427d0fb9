#pragma once

#include <span>
#include <vector>

#include "lagflux/euler.hpp"
#include "lagflux/grid.hpp"

namespace lagflux {

// Material table: one adiabatic index per material.
struct MaterialSet {
  std::vector<double> gammas;
  int count() const { return int(gammas.size()); }
};

MaterialSet make_material_set(std::vector<double> gammas);

// Per-cell partial densities rho*y_k, one array per material in grid layout.
// Partial densities are the conserved quantities; mass fractions are derived
// views so per-material totals stay a plain sum.
struct MaterialCells {
  MaterialCells() = default;
  MaterialCells(const CartesianGrid& g, int n_materials)
      : partial(std::size_t(n_materials), std::vector<double>(g.cell_count(), 0.0)) {}

  std::vector<std::vector<double>> partial;
  int count() const { return int(partial.size()); }
};

// Fraction from a partial density, clamped into [0,1] when off by round-off
// only; anything further out is a real positivity failure.
double clamped_fraction(double partial, double rho, const CellContext* ctx = nullptr);

// Energy-consistent mixed-cell closure: 1/(gamma_eff - 1) = sum_k y_k/(gamma_k - 1).
// A pure cell returns its material's gamma exactly.
double mixed_cell_gamma(const MaterialSet& set, std::span<const double> fractions);

// Per-material edge mass fluxes from the hydrodynamic edge mass flux and the
// upwind cell's fractions. The last material takes the complement, so
// subtracting the per-material fluxes from mass_flux in order leaves exactly
// zero.
void mass_fraction_fluxes(double mass_flux, std::span<const double> y_upwind,
                          std::span<double> out);

} // namespace lagflux
