#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "lagflux/advect.hpp"
#include "lagflux/multimat.hpp"
#include "lagflux/run.hpp"
#include "lagflux/solver.hpp"
#include "test_util.hpp"

using namespace lagflux;

namespace {
const PerfectGasEos kAir{1.4};
const TimeControls kFreeRun{0.25, 1e30, std::numeric_limits<std::int64_t>::max()};
} // namespace

TEST_CASE("per-material edge fluxes") {
  double out1[1];
  const double y1[1] = {1.0};
  mass_fraction_fluxes(3.7, y1, out1);
  CHECK(out1[0] == 3.7); // single material carries the whole mass flux

  double out2[2];
  const double y2[2] = {0.3, 0.7};
  mass_fraction_fluxes(0.0, y2, out2);
  CHECK(out2[0] == 0.0);
  CHECK(out2[1] == 0.0);

  mass_fraction_fluxes(2.0, y2, out2);
  CHECK(out2[0] == 0.6);
  CHECK(out2[1] == 1.4);

  // the complement makes the sequential sum exact, bit for bit
  testing::StateGen gen(0x3a7);
  for (int i = 0; i < 1000; ++i) {
    double y[3];
    y[0] = gen.uniform(0.0, 1.0);
    y[1] = gen.uniform(0.0, 1.0 - y[0]);
    y[2] = 1.0 - y[0] - y[1];
    const double flux = gen.uniform(-10.0, 10.0);
    double out[3];
    mass_fraction_fluxes(flux, y, out);
    double rest = flux;
    for (double f : out) rest -= f;
    CHECK(rest == 0.0);
  }
}

TEST_CASE("mixed-cell gamma closure") {
  const MaterialSet set = make_material_set({1.5, 1.4});
  const double pure1[2] = {1.0, 0.0};
  CHECK(mixed_cell_gamma(set, pure1) == 1.5);
  const double pure2[2] = {0.0, 1.0};
  CHECK(mixed_cell_gamma(set, pure2) == 1.4);
  const double half[2] = {0.5, 0.5};
  // 1 + 1/(0.5/0.5 + 0.5/0.4)
  CHECK(mixed_cell_gamma(set, half) == doctest::Approx(1.4444444444444444).epsilon(1e-15));

  CHECK_THROWS_AS(make_material_set({}), ConfigError);
  CHECK_THROWS_AS(make_material_set({1.4, 0.9}), ConfigError);
}

TEST_CASE("two-material contact: partial masses stay consistent and pressure clean") {
  // equal-gamma materials so the mixing closure is exact across the contact
  CaseConfig c;
  c.dimensions = 1;
  c.nx = 64;
  c.material_gammas = {1.4, 1.4};
  c.gamma = 1.4;
  c.init = InitKind::regions;
  c.regions.push_back({0.0, 0.5, 0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1});
  c.regions.push_back({0.5, 1.0, 0.0, 1.0, 0.35, 1.0, 0.0, 1.0, 2});
  c.bc_x_low = c.bc_x_high = BcKind::periodic;

  const CartesianGrid g = build_grid(c);
  const MaterialSet set = make_material_set(c.material_gammas);
  MaterialCells mat(g, set.count());
  SolverState state;
  state.field = CellField(g);
  initialize_hydro(c, g, state.field, &mat);

  double mass0[2] = {0.0, 0.0};
  for (int k = 0; k < 2; ++k)
    for (int i = g.gx; i < g.gx + g.nx; ++i)
      mass0[k] += mat.partial[std::size_t(k)][g.idx(i, 0)] * g.dx;

  LagfluxSolver solver(g, c.boundary(), kAir, SchemeParams{}, 1, &set);
  for (int s = 0; s < 100; ++s) solver.heun_step(state, kFreeRun, 1e30, &mat);

  double mass1[2] = {0.0, 0.0};
  for (int i = g.gx; i < g.gx + g.nx; ++i) {
    const std::int64_t cell = g.idx(i, 0);
    const double rho = state.field.comp[0][cell];
    const double sum = mat.partial[0][cell] + mat.partial[1][cell];
    CHECK(std::abs(sum - rho) < 1e-12 * rho); // partial masses add up to rho
    const PrimitiveState w = primitive_from_conserved(state.field.state(g, i, 0), kAir);
    CHECK(std::abs(w.u - 1.0) < 1e-10);
    CHECK(std::abs(w.p - 1.0) < 1e-10); // no pressure oscillation at the interface
    for (int k = 0; k < 2; ++k) {
      const double y = clamped_fraction(mat.partial[std::size_t(k)][cell], rho);
      CHECK(y >= 0.0);
      CHECK(y <= 1.0);
      mass1[k] += mat.partial[std::size_t(k)][cell] * g.dx;
    }
  }
  for (int k = 0; k < 2; ++k)
    CHECK(std::abs(mass1[k] - mass0[k]) < 1e-12 * mass0[k]); // per-material conservation
}

TEST_CASE("unequal gammas advect stably through a contact") {
  CaseConfig c;
  c.dimensions = 1;
  c.nx = 64;
  c.material_gammas = {1.5, 1.4};
  c.gamma = 1.5;
  c.init = InitKind::regions;
  c.regions.push_back({0.0, 0.5, 0.0, 1.0, 1.0, 1.0, 0.0, 1.0, 1});
  c.regions.push_back({0.5, 1.0, 0.0, 1.0, 0.35, 1.0, 0.0, 1.0, 2});
  c.bc_x_low = c.bc_x_high = BcKind::periodic;

  const CartesianGrid g = build_grid(c);
  const MaterialSet set = make_material_set(c.material_gammas);
  MaterialCells mat(g, set.count());
  SolverState state;
  state.field = CellField(g);
  initialize_hydro(c, g, state.field, &mat);
  LagfluxSolver solver(g, c.boundary(), PerfectGasEos{c.gamma}, SchemeParams{}, 1, &set);
  for (int s = 0; s < 50; ++s) solver.heun_step(state, kFreeRun, 1e30, &mat);
  // the gamma jump leaves a small conservative pressure wake; positivity and
  // fraction bounds must survive it
  for (const StepDiagnostics& d : state.diagnostics) {
    CHECK(d.min_rho > 0.0);
    CHECK(d.min_p > 0.0);
  }
}

TEST_CASE("single-vortex velocity field") {
  const double period = 12.0;
  // boundaries are stagnation lines (sin(pi * 1.0) leaves ~1e-16 round-off)
  for (double s : {0.0, 1.0}) {
    const Vec2 a = rider_kothe_velocity(s, 0.37, 0.0, period);
    CHECK(std::abs(a.x) < 1e-30);
    CHECK(std::abs(a.y) < 1e-15);
    const Vec2 b = rider_kothe_velocity(0.37, s, 0.0, period);
    CHECK(std::abs(b.x) < 1e-15);
    CHECK(std::abs(b.y) < 1e-30);
  }
  // reversal instant
  const Vec2 mid = rider_kothe_velocity(0.3, 0.6, period / 2.0, period);
  CHECK(std::abs(mid.x) < 1e-15);
  CHECK(std::abs(mid.y) < 1e-15);
  // (0.5, 0.25) at t=0: u = -sin^2(pi/2) sin(pi/2) = -1
  const Vec2 v = rider_kothe_velocity(0.5, 0.25, 0.0, period);
  CHECK(v.x == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(v.y) < 1e-14);
}

TEST_CASE("stream-function face velocities are discretely divergence-free") {
  const CartesianGrid g = make_grid_2d(32, 32, 0.0, 1.0, 0.0, 1.0);
  const FaceVelocity vel = face_velocity_from_stream(
      g, [](double x, double y) { return rider_kothe_stream(x, y, 0.0, 12.0); });
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t ex = std::size_t(j) * (g.nx + 1) + i;
      const std::size_t ey = std::size_t(j) * g.nx + i;
      const double div = (vel.x[ex + 1] - vel.x[ex]) / g.dx +
                         (vel.y[ey + std::size_t(g.nx)] - vel.y[ey]) / g.dy;
      CHECK(std::abs(div) < 1e-12);
    }
}

TEST_CASE("scalar advection: identity at zero velocity") {
  const CartesianGrid g = make_grid_2d(16, 16, 0.0, 1.0, 0.0, 1.0);
  ScalarField z(g);
  testing::StateGen gen(0xadc);
  for (double& v : z.z) v = gen.uniform(0.0, 1.0);
  const FaceVelocity still = uniform_face_velocity(g, 0.0, 0.0);
  const ScalarField out = advect_scalar_2d(g, BoundaryCondition{}, z, still, 0.1, {1.0});
  for (int j = g.gy; j < g.gy + g.ny; ++j)
    for (int i = g.gx; i < g.gx + g.nx; ++i)
      CHECK(out.z[g.idx(i, j)] == z.z[g.idx(i, j)]);
}

TEST_CASE("scalar advection: uniform stream around a periodic box") {
  const CartesianGrid g = make_grid_2d(64, 64, 0.0, 1.0, 0.0, 1.0);
  const BoundaryCondition bc{BcKind::periodic, BcKind::periodic, BcKind::periodic,
                             BcKind::periodic};
  CaseConfig c;
  c.disk_cx = 0.5;
  c.disk_cy = 0.5;
  c.disk_radius = 0.2;
  ScalarField z(g);
  initialize_scalar(c, g, z);
  const double total0 = scalar_integral(g, z);

  const FaceVelocity vel = uniform_face_velocity(g, 1.0, 0.0);
  const double rate = max_signal_rate(g, vel);
  const double dt = 0.25 / rate;
  const int steps = int(std::ceil(1.0 / dt));
  ScalarField cur = z;
  for (int s = 0; s < steps; ++s) {
    const double step_dt = std::min(dt, 1.0 - s * dt);
    if (step_dt <= 0.0) break;
    cur = advect_scalar_2d(g, bc, cur, vel, step_dt, {1.0});
    for (int j = g.gy; j < g.gy + g.ny; ++j)
      for (int i = g.gx; i < g.gx + g.nx; ++i) {
        CHECK(cur.z[g.idx(i, j)] >= -1e-12);
        CHECK(cur.z[g.idx(i, j)] <= 1.0 + 1e-12);
      }
  }
  CHECK(std::abs(scalar_integral(g, cur) - total0) < 1e-12 * total0);
  // one full traversal comes back close to the start
  double l1 = 0.0;
  for (int j = g.gy; j < g.gy + g.ny; ++j)
    for (int i = g.gx; i < g.gx + g.nx; ++i)
      l1 += std::abs(cur.z[g.idx(i, j)] - z.z[g.idx(i, j)]) * g.cell_volume();
  CHECK(l1 < 0.25 * total0);
  CHECK(l1 > 0.0);
}

TEST_CASE("advection rejects steps past the CFL bound") {
  const CartesianGrid g = make_grid_2d(16, 16, 0.0, 1.0, 0.0, 1.0);
  ScalarField z(g);
  const FaceVelocity vel = uniform_face_velocity(g, 2.0, 0.0);
  CHECK_THROWS_AS(advect_scalar_2d(g, BoundaryCondition{}, z, vel, 1.0, {1.0}),
                  StepTooLargeError);
}

TEST_CASE("triple-point style region setup") {
  CaseConfig c;
  c.dimensions = 2;
  c.nx = 70;
  c.ny = 30;
  c.x_max = 7.0;
  c.y_max = 3.0;
  c.material_gammas = {1.5, 1.4, 1.5};
  c.gamma = 1.5;
  c.init = InitKind::regions;
  c.regions.push_back({0.0, 1.0, 0.0, 3.0, 1.0, 0.0, 0.0, 1.0, 1});
  c.regions.push_back({1.0, 7.0, 1.5, 3.0, 0.125, 0.0, 0.0, 0.1, 2});
  c.regions.push_back({1.0, 7.0, 0.0, 1.5, 1.0, 0.0, 0.0, 0.1, 3});

  const CartesianGrid g = build_grid(c);
  const MaterialSet set = make_material_set(c.material_gammas);
  MaterialCells mat(g, set.count());
  CellField field(g);
  initialize_hydro(c, g, field, &mat);

  double area[3] = {0.0, 0.0, 0.0};
  for (int j = g.gy; j < g.gy + g.ny; ++j)
    for (int i = g.gx; i < g.gx + g.nx; ++i) {
      const std::int64_t cell = g.idx(i, j);
      const double rho = field.comp[0][cell];
      int owner = -1;
      double sum = 0.0;
      for (int k = 0; k < 3; ++k) {
        const double y = mat.partial[std::size_t(k)][cell] / rho;
        sum += y;
        if (y == 1.0) owner = k;
      }
      CHECK(sum == 1.0);
      CHECK(owner >= 0); // every cell belongs to exactly one material
      area[owner] += g.cell_volume();
    }
  CHECK(area[0] + area[1] + area[2] == doctest::Approx(21.0).epsilon(1e-12));
  CHECK(area[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(area[1] == doctest::Approx(9.0).epsilon(1e-12));

  // overlapping regions are rejected
  CaseConfig bad = c;
  bad.regions[1].x_min = 0.5;
  CellField dummy(g);
  MaterialCells dummy_mat(g, 3);
  CHECK_THROWS_AS(initialize_hydro(bad, g, dummy, &dummy_mat), ConfigError);
}
