#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lagflux/euler.hpp"

namespace lagflux {

struct CaseConfig;

enum class Axis { x, y };

// Uniform Cartesian mesh with ghost layers. 1D grids carry no y ghosts and
// use dy = 1 so that cell volume == dx.
struct CartesianGrid {
  int dim = 1;
  int nx = 1;
  int ny = 1;
  double dx = 1.0;
  double dy = 1.0;
  double x0 = 0.0; // lower-left corner of the physical domain
  double y0 = 0.0;
  int gx = 2; // ghost layers per side in x
  int gy = 0; // ghost layers per side in y (0 for 1D)

  int nxt() const { return nx + 2 * gx; }
  int nyt() const { return ny + 2 * gy; }
  std::int64_t cell_count() const { return std::int64_t(nxt()) * nyt(); }
  std::int64_t interior_count() const { return std::int64_t(nx) * ny; }
  std::int64_t idx(int i, int j) const { return std::int64_t(j) * nxt() + i; }

  // Cell-center coordinates from total (ghost-inclusive) indices.
  double xc(int i) const { return x0 + (i - gx + 0.5) * dx; }
  double yc(int j) const { return y0 + (j - gy + 0.5) * dy; }

  double cell_volume() const { return dim == 2 ? dx * dy : dx; }
  // Measure of a face orthogonal to the given axis.
  double face_area(Axis a) const {
    if (dim == 1) return 1.0;
    return a == Axis::x ? dy : dx;
  }
};

CartesianGrid make_grid_1d(int nx, double x_min, double x_max, int ghost = 2);
CartesianGrid make_grid_2d(int nx, int ny, double x_min, double x_max, double y_min,
                           double y_max, int ghost = 2);
CartesianGrid build_grid(const CaseConfig& config);

enum class BcKind { transmissive, reflective, periodic };

struct BoundaryCondition {
  BcKind x_low = BcKind::transmissive;
  BcKind x_high = BcKind::transmissive;
  BcKind y_low = BcKind::transmissive;
  BcKind y_high = BcKind::transmissive;
};

// Periodic sides must be paired; throws ConfigError otherwise.
void validate_boundary(const BoundaryCondition& bc, int dim);

// How a scalar component behaves when mirrored at a reflective wall.
enum class GhostParity { even, flip_x, flip_y };

// Fill the ghost layers of one scalar component laid out on `g`.
// Interior cells are never written.
void fill_ghosts(const CartesianGrid& g, const BoundaryCondition& bc, GhostParity parity,
                 double* f);

// Cell-centered conserved field, one contiguous array per component
// (rho, mom_x, mom_y, rhoE) so flux loops stream with unit stride.
struct CellField {
  CellField() = default;
  explicit CellField(const CartesianGrid& g)
      : comp{std::vector<double>(g.cell_count(), 0.0), std::vector<double>(g.cell_count(), 0.0),
             std::vector<double>(g.cell_count(), 0.0), std::vector<double>(g.cell_count(), 0.0)} {}

  std::array<std::vector<double>, 4> comp;

  ConservedState state(const CartesianGrid& g, int i, int j) const {
    const std::int64_t c = g.idx(i, j);
    return {comp[0][c], comp[1][c], comp[2][c], comp[3][c]};
  }
  void set_state(const CartesianGrid& g, int i, int j, const ConservedState& u) {
    const std::int64_t c = g.idx(i, j);
    comp[0][c] = u.rho;
    comp[1][c] = u.mom_x;
    comp[2][c] = u.mom_y;
    comp[3][c] = u.rhoE;
  }
};

// Fill ghosts of all four conserved components; momentum components take the
// reflective sign flip in their own direction.
void apply_boundary(const CartesianGrid& g, const BoundaryCondition& bc, CellField& field);

// Interior sum of |K| * component, in fixed cell order.
std::array<double, 4> interior_totals(const CartesianGrid& g, const CellField& field);

} // namespace lagflux
