#include "lagflux/advect.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace lagflux {

namespace {
constexpr double kPi = std::numbers::pi;
}

double rider_kothe_stream(double x, double y, double t, double period) {
  const double sx = std::sin(kPi * x);
  const double sy = std::sin(kPi * y);
  return (1.0 / kPi) * sx * sx * sy * sy * std::cos(kPi * t / period);
}

Vec2 rider_kothe_velocity(double x, double y, double t, double period) {
  const double sx = std::sin(kPi * x);
  const double sy = std::sin(kPi * y);
  const double reversal = std::cos(kPi * t / period);
  Vec2 vel;
  vel.x = -sx * sx * std::sin(2.0 * kPi * y) * reversal;
  vel.y = std::sin(2.0 * kPi * x) * sy * sy * reversal;
  return vel;
}

FaceVelocity face_velocity_from_stream(const CartesianGrid& g,
                                       const std::function<double(double, double)>& psi) {
  FaceVelocity vel;
  vel.x.resize(std::size_t(g.nx + 1) * g.ny);
  vel.y.resize(std::size_t(g.nx) * (g.ny + 1));
  const auto corner_x = [&](int fi) { return g.x0 + fi * g.dx; };
  const auto corner_y = [&](int fj) { return g.y0 + fj * g.dy; };
  // u = -dpsi/dy: face mean is the exact difference of psi along the face
  for (int j = 0; j < g.ny; ++j)
    for (int fi = 0; fi <= g.nx; ++fi)
      vel.x[std::size_t(j) * (g.nx + 1) + fi] =
          -(psi(corner_x(fi), corner_y(j + 1)) - psi(corner_x(fi), corner_y(j))) / g.dy;
  for (int fj = 0; fj <= g.ny; ++fj)
    for (int i = 0; i < g.nx; ++i)
      vel.y[std::size_t(fj) * g.nx + i] =
          (psi(corner_x(i + 1), corner_y(fj)) - psi(corner_x(i), corner_y(fj))) / g.dx;
  return vel;
}

FaceVelocity uniform_face_velocity(const CartesianGrid& g, double u, double v) {
  FaceVelocity vel;
  vel.x.assign(std::size_t(g.nx + 1) * g.ny, u);
  vel.y.assign(std::size_t(g.nx) * (g.ny + 1), v);
  return vel;
}

double max_signal_rate(const CartesianGrid& g, const FaceVelocity& vel) {
  double rate = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t exl = std::size_t(j) * (g.nx + 1) + i;
      const std::size_t eyb = std::size_t(j) * g.nx + i;
      const double ux = std::max(std::abs(vel.x[exl]), std::abs(vel.x[exl + 1]));
      const double uy =
          std::max(std::abs(vel.y[eyb]), std::abs(vel.y[eyb + std::size_t(g.nx)]));
      rate = std::max(rate, ux / g.dx + uy / g.dy);
    }
  }
  return rate;
}

namespace {

// One forward-Euler stage of the conservative update; `in` ghosts are filled
// by the caller.
void advect_stage(const CartesianGrid& g, const ScalarField& in, const FaceVelocity& vel,
                  double dt, LimiterParams lp, ScalarField& out, int threads) {
  const int nx = g.nx, ny = g.ny, nxt = g.nxt();
  const double* z = in.z.data();
  std::vector<double> fx(std::size_t(nx + 1) * ny);
  std::vector<double> fy(std::size_t(nx) * (ny + 1));

#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t e = 0; e < std::int64_t(nx + 1) * ny; ++e) {
    const int fi = int(e % (nx + 1));
    const int j = int(e / (nx + 1));
    const std::int64_t ch = g.idx(g.gx + fi, g.gy + j);
    const FaceTrace t = muscl_face_trace(z[ch - 2], z[ch - 1], z[ch], z[ch + 1], lp);
    const double un = vel.x[std::size_t(e)];
    fx[std::size_t(e)] = un * (un > 0.0 ? t.minus : un < 0.0 ? t.plus : 0.5 * (t.minus + t.plus));
  }
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t e = 0; e < std::int64_t(nx) * (ny + 1); ++e) {
    const int i = int(e % nx);
    const int fj = int(e / nx);
    const std::int64_t ch = g.idx(g.gx + i, g.gy + fj);
    const FaceTrace t =
        muscl_face_trace(z[ch - 2 * nxt], z[ch - nxt], z[ch], z[ch + nxt], lp);
    const double un = vel.y[std::size_t(e)];
    fy[std::size_t(e)] = un * (un > 0.0 ? t.minus : un < 0.0 ? t.plus : 0.5 * (t.minus + t.plus));
  }

  const double lam_x = dt / g.dx, lam_y = dt / g.dy;
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t cc = 0; cc < std::int64_t(nx) * ny; ++cc) {
    const int i = int(cc % nx);
    const int j = int(cc / nx);
    const std::size_t exl = std::size_t(j) * (nx + 1) + i;
    const std::size_t eyb = std::size_t(j) * nx + i;
    out.z[g.idx(g.gx + i, g.gy + j)] =
        z[g.idx(g.gx + i, g.gy + j)] - lam_x * (fx[exl + 1] - fx[exl]) -
        lam_y * (fy[eyb + std::size_t(nx)] - fy[eyb]);
  }
}

} // namespace

ScalarField advect_scalar_2d(const CartesianGrid& g, const BoundaryCondition& bc,
                             const ScalarField& z, const FaceVelocity& vel_start,
                             const FaceVelocity& vel_end, double dt, LimiterParams lp,
                             int time_order, int threads) {
  if (g.dim != 2) throw ConfigError("scalar advection is a 2D operation");
  const double rate = std::max(max_signal_rate(g, vel_start), max_signal_rate(g, vel_end));
  if (dt * rate > 1.0)
    throw StepTooLargeError("advection CFL violated: dt * rate = " +
                            std::to_string(dt * rate));

  ScalarField work = z;
  fill_ghosts(g, bc, GhostParity::even, work.z.data());
  ScalarField stage1(g);
  advect_stage(g, work, vel_start, dt, lp, stage1, threads);
  if (time_order < 2) return stage1;

  fill_ghosts(g, bc, GhostParity::even, stage1.z.data());
  ScalarField stage2(g);
  advect_stage(g, stage1, vel_end, dt, lp, stage2, threads);

  // Heun: average of the start state and the twice-advanced state
  ScalarField out(g);
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t cc = 0; cc < std::int64_t(g.nx) * g.ny; ++cc) {
    const std::int64_t cell = g.idx(g.gx + int(cc % g.nx), g.gy + int(cc / g.nx));
    out.z[cell] = 0.5 * (work.z[cell] + stage2.z[cell]);
  }
  return out;
}

double scalar_integral(const CartesianGrid& g, const ScalarField& z) {
  double s = 0.0;
  for (int j = g.gy; j < g.gy + g.ny; ++j)
    for (int i = g.gx; i < g.gx + g.nx; ++i) s += z.z[g.idx(i, j)];
  return s * g.cell_volume();
}

} // namespace lagflux
