#include "lagflux/grid.hpp"

#include <string>

#include "lagflux/config.hpp"

namespace lagflux {

namespace {

void check_extent(const char* name, double lo, double hi) {
  if (!(hi > lo))
    throw ConfigError(std::string(name) + " extent must be positive, got [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

void check_count(const char* name, int n) {
  if (n < 1) throw ConfigError(std::string(name) + " must be >= 1, got " + std::to_string(n));
}

} // namespace

CartesianGrid make_grid_1d(int nx, double x_min, double x_max, int ghost) {
  check_count("nx", nx);
  check_extent("x", x_min, x_max);
  CartesianGrid g;
  g.dim = 1;
  g.nx = nx;
  g.ny = 1;
  g.dx = (x_max - x_min) / nx;
  g.dy = 1.0;
  g.x0 = x_min;
  g.y0 = 0.0;
  g.gx = ghost;
  g.gy = 0;
  return g;
}

CartesianGrid make_grid_2d(int nx, int ny, double x_min, double x_max, double y_min,
                           double y_max, int ghost) {
  check_count("nx", nx);
  check_count("ny", ny);
  check_extent("x", x_min, x_max);
  check_extent("y", y_min, y_max);
  CartesianGrid g;
  g.dim = 2;
  g.nx = nx;
  g.ny = ny;
  g.dx = (x_max - x_min) / nx;
  g.dy = (y_max - y_min) / ny;
  g.x0 = x_min;
  g.y0 = y_min;
  g.gx = ghost;
  g.gy = ghost;
  return g;
}

CartesianGrid build_grid(const CaseConfig& config) {
  if (config.dimensions == 1)
    return make_grid_1d(config.nx, config.x_min, config.x_max);
  return make_grid_2d(config.nx, config.ny, config.x_min, config.x_max, config.y_min,
                      config.y_max);
}

void validate_boundary(const BoundaryCondition& bc, int dim) {
  if ((bc.x_low == BcKind::periodic) != (bc.x_high == BcKind::periodic))
    throw ConfigError("periodic boundary in x must be set on both sides");
  if (dim == 2 && (bc.y_low == BcKind::periodic) != (bc.y_high == BcKind::periodic))
    throw ConfigError("periodic boundary in y must be set on both sides");
}

void fill_ghosts(const CartesianGrid& g, const BoundaryCondition& bc, GhostParity parity,
                 double* f) {
  const int nxt = g.nxt();
  const auto at = [&](int i, int j) -> double& { return f[std::int64_t(j) * nxt + i]; };
  const double sx = parity == GhostParity::flip_x ? -1.0 : 1.0;
  const double sy = parity == GhostParity::flip_y ? -1.0 : 1.0;

  // x sides first, interior rows only; then y sides over every column so the
  // corners pick up the fresh x ghosts.
  for (int j = g.gy; j < g.gy + g.ny; ++j) {
    for (int l = 1; l <= g.gx; ++l) {
      const int lo = g.gx - l;
      const int hi = g.gx + g.nx - 1 + l;
      switch (bc.x_low) {
      case BcKind::transmissive: at(lo, j) = at(g.gx, j); break;
      case BcKind::reflective: at(lo, j) = sx * at(g.gx + l - 1, j); break;
      case BcKind::periodic: at(lo, j) = at(g.gx + ((g.nx - l) % g.nx + g.nx) % g.nx, j); break;
      }
      switch (bc.x_high) {
      case BcKind::transmissive: at(hi, j) = at(g.gx + g.nx - 1, j); break;
      case BcKind::reflective: at(hi, j) = sx * at(g.gx + g.nx - l, j); break;
      case BcKind::periodic: at(hi, j) = at(g.gx + (l - 1) % g.nx, j); break;
      }
    }
  }
  if (g.gy == 0) return;
  for (int i = 0; i < g.nxt(); ++i) {
    for (int l = 1; l <= g.gy; ++l) {
      const int lo = g.gy - l;
      const int hi = g.gy + g.ny - 1 + l;
      switch (bc.y_low) {
      case BcKind::transmissive: at(i, lo) = at(i, g.gy); break;
      case BcKind::reflective: at(i, lo) = sy * at(i, g.gy + l - 1); break;
      case BcKind::periodic: at(i, lo) = at(i, g.gy + ((g.ny - l) % g.ny + g.ny) % g.ny); break;
      }
      switch (bc.y_high) {
      case BcKind::transmissive: at(i, hi) = at(i, g.gy + g.ny - 1); break;
      case BcKind::reflective: at(i, hi) = sy * at(i, g.gy + g.ny - l); break;
      case BcKind::periodic: at(i, hi) = at(i, g.gy + (l - 1) % g.ny); break;
      }
    }
  }
}

void apply_boundary(const CartesianGrid& g, const BoundaryCondition& bc, CellField& field) {
  fill_ghosts(g, bc, GhostParity::even, field.comp[0].data());
  fill_ghosts(g, bc, GhostParity::flip_x, field.comp[1].data());
  fill_ghosts(g, bc, GhostParity::flip_y, field.comp[2].data());
  fill_ghosts(g, bc, GhostParity::even, field.comp[3].data());
}

std::array<double, 4> interior_totals(const CartesianGrid& g, const CellField& field) {
  std::array<double, 4> tot{0.0, 0.0, 0.0, 0.0};
  const double vol = g.cell_volume();
  for (int c = 0; c < 4; ++c) {
    const double* f = field.comp[c].data();
    double sum = 0.0;
    for (int j = g.gy; j < g.gy + g.ny; ++j)
      for (int i = g.gx; i < g.gx + g.nx; ++i) sum += f[g.idx(i, j)];
    tot[c] = sum * vol;
  }
  return tot;
}

} // namespace lagflux
