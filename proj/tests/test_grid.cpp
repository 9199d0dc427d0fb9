#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "lagflux/grid.hpp"

using namespace lagflux;

TEST_CASE("grid construction") {
  const CartesianGrid g1 = make_grid_1d(100, 0.0, 1.0);
  CHECK(g1.dx == 1.0 / 100);
  CHECK(g1.gy == 0);
  CHECK(g1.cell_volume() == g1.dx);

  // triple-point scale mesh
  const CartesianGrid g2 = make_grid_2d(2048, 878, 0.0, 7.0, 0.0, 3.0);
  CHECK(g2.dx == 7.0 / 2048);
  CHECK(g2.dy == 3.0 / 878);
  CHECK(g2.face_area(Axis::x) == g2.dy);
  CHECK(g2.face_area(Axis::y) == g2.dx);

  CHECK_THROWS_AS(make_grid_1d(0, 0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(make_grid_1d(10, 1.0, 1.0), ConfigError);
}

TEST_CASE("boundary pairing") {
  BoundaryCondition bc;
  bc.x_low = BcKind::periodic;
  CHECK_THROWS_AS(validate_boundary(bc, 1), ConfigError);
  bc.x_high = BcKind::periodic;
  CHECK_NOTHROW(validate_boundary(bc, 1));
  bc.y_low = BcKind::periodic;
  CHECK_THROWS_AS(validate_boundary(bc, 2), ConfigError);
}

namespace {

CellField indexed_field(const CartesianGrid& g) {
  CellField f(g);
  for (int j = g.gy; j < g.gy + g.ny; ++j)
    for (int i = g.gx; i < g.gx + g.nx; ++i)
      f.set_state(g, i, j, {1.0 + i + 100.0 * j, 0.5 * i, 0.25 * j, 10.0 + i});
  return f;
}

} // namespace

TEST_CASE("uniform field fills ghosts with the uniform value") {
  const CartesianGrid g = make_grid_2d(5, 4, 0.0, 1.0, 0.0, 1.0);
  for (BcKind kind : {BcKind::transmissive, BcKind::reflective, BcKind::periodic}) {
    CellField f(g);
    for (int j = g.gy; j < g.gy + g.ny; ++j)
      for (int i = g.gx; i < g.gx + g.nx; ++i) f.set_state(g, i, j, {0.7, 0.7, 0.7, 0.7});
    const BoundaryCondition bc{kind, kind, kind, kind};
    apply_boundary(g, bc, f);
    for (int j = 0; j < g.nyt(); ++j)
      for (int i = 0; i < g.nxt(); ++i) {
        CHECK(f.comp[0][g.idx(i, j)] == 0.7);
        // reflective flips the normal momentum sign in the ghosts
        if (kind != BcKind::reflective) CHECK(f.comp[1][g.idx(i, j)] == 0.7);
        CHECK(f.comp[3][g.idx(i, j)] == 0.7);
      }
  }
}

TEST_CASE("reflective ghosts mirror the state and negate the normal velocity") {
  const CartesianGrid g = make_grid_1d(6, 0.0, 1.0);
  CellField f = indexed_field(g);
  apply_boundary(g, {BcKind::reflective, BcKind::reflective, BcKind::transmissive,
                     BcKind::transmissive},
                 f);
  // layer 1 mirrors the first interior cell
  CHECK(f.comp[0][g.idx(g.gx - 1, 0)] == f.comp[0][g.idx(g.gx, 0)]);
  CHECK(f.comp[1][g.idx(g.gx - 1, 0)] == -f.comp[1][g.idx(g.gx, 0)]);
  CHECK(f.comp[3][g.idx(g.gx - 1, 0)] == f.comp[3][g.idx(g.gx, 0)]);
  // layer 2 mirrors the second interior cell
  CHECK(f.comp[0][g.idx(g.gx - 2, 0)] == f.comp[0][g.idx(g.gx + 1, 0)]);
  CHECK(f.comp[1][g.idx(g.gx - 2, 0)] == -f.comp[1][g.idx(g.gx + 1, 0)]);
  // high side
  CHECK(f.comp[0][g.idx(g.gx + g.nx, 0)] == f.comp[0][g.idx(g.gx + g.nx - 1, 0)]);
  CHECK(f.comp[1][g.idx(g.gx + g.nx, 0)] == -f.comp[1][g.idx(g.gx + g.nx - 1, 0)]);
}

TEST_CASE("periodic ghosts wrap") {
  const CartesianGrid g = make_grid_1d(8, 0.0, 1.0);
  CellField f = indexed_field(g);
  apply_boundary(g, {BcKind::periodic, BcKind::periodic, BcKind::transmissive,
                     BcKind::transmissive},
                 f);
  CHECK(f.comp[0][g.idx(g.gx - 1, 0)] == f.comp[0][g.idx(g.gx + g.nx - 1, 0)]);
  CHECK(f.comp[0][g.idx(g.gx - 2, 0)] == f.comp[0][g.idx(g.gx + g.nx - 2, 0)]);
  CHECK(f.comp[0][g.idx(g.gx + g.nx, 0)] == f.comp[0][g.idx(g.gx, 0)]);
  CHECK(f.comp[0][g.idx(g.gx + g.nx + 1, 0)] == f.comp[0][g.idx(g.gx + 1, 0)]);
}

TEST_CASE("2D periodic corners wrap diagonally") {
  const CartesianGrid g = make_grid_2d(6, 5, 0.0, 1.0, 0.0, 1.0);
  CellField f = indexed_field(g);
  apply_boundary(g, {BcKind::periodic, BcKind::periodic, BcKind::periodic, BcKind::periodic},
                 f);
  CHECK(f.comp[0][g.idx(g.gx - 1, g.gy - 1)] ==
        f.comp[0][g.idx(g.gx + g.nx - 1, g.gy + g.ny - 1)]);
  CHECK(f.comp[0][g.idx(g.gx + g.nx, g.gy + g.ny)] == f.comp[0][g.idx(g.gx, g.gy)]);
}

TEST_CASE("ghost filling never touches interior cells") {
  const CartesianGrid g = make_grid_2d(7, 3, 0.0, 2.0, 0.0, 1.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.5, 2.0);
  CellField f(g);
  for (auto& comp : f.comp)
    for (double& v : comp) v = dist(rng);
  const CellField before = f;
  for (BcKind kind : {BcKind::transmissive, BcKind::reflective, BcKind::periodic}) {
    f = before;
    apply_boundary(g, {kind, kind, kind, kind}, f);
    for (int j = g.gy; j < g.gy + g.ny; ++j)
      for (int i = g.gx; i < g.gx + g.nx; ++i)
        for (int c = 0; c < 4; ++c)
          CHECK(f.comp[c][g.idx(i, j)] == before.comp[c][g.idx(i, j)]);
  }
}

TEST_CASE("interior totals are rotation-invariant on a periodic grid") {
  const CartesianGrid g = make_grid_1d(16, 0.0, 1.0);
  CellField f = indexed_field(g);
  apply_boundary(g, {BcKind::periodic, BcKind::periodic, BcKind::transmissive,
                     BcKind::transmissive},
                 f);
  const auto t0 = interior_totals(g, f);

  CellField rot(g);
  const int shift = 5;
  for (int i = 0; i < g.nx; ++i) {
    const int src = (i + shift) % g.nx;
    rot.set_state(g, g.gx + i, 0, f.state(g, g.gx + src, 0));
  }
  apply_boundary(g, {BcKind::periodic, BcKind::periodic, BcKind::transmissive,
                     BcKind::transmissive},
                 rot);
  const auto t1 = interior_totals(g, rot);
  for (int c = 0; c < 4; ++c) CHECK(t1[c] == doctest::Approx(t0[c]).epsilon(1e-13));
}
