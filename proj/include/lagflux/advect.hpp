#pragma once

#include <functional>
#include <vector>

#include "lagflux/grid.hpp"
#include "lagflux/reconstruct.hpp"

namespace lagflux {

// Passive scalar in grid layout (interior + ghosts).
struct ScalarField {
  ScalarField() = default;
  explicit ScalarField(const CartesianGrid& g) : z(g.cell_count(), 0.0) {}
  std::vector<double> z;
};

// Face-normal velocities: x faces (nx+1 per row), y faces (nx per row, ny+1
// rows). Built from corner values of a stream function they are discretely
// divergence-free, which makes the conservative update bound-preserving.
struct FaceVelocity {
  std::vector<double> x;
  std::vector<double> y;
};

// Single-vortex velocity with a cosine time reversal over `period`:
// psi = (1/pi) sin^2(pi x) sin^2(pi y) cos(pi t / period),
// u = -d(psi)/dy, v = d(psi)/dx.
double rider_kothe_stream(double x, double y, double t, double period);
Vec2 rider_kothe_velocity(double x, double y, double t, double period);

// Exact face-mean normal velocities from stream function corner differences.
FaceVelocity face_velocity_from_stream(const CartesianGrid& g,
                                       const std::function<double(double, double)>& psi);

FaceVelocity uniform_face_velocity(const CartesianGrid& g, double u, double v);

// max over cells of sum_d |u_d|/dx_d; dt * rate <= 1 is the advection CFL.
double max_signal_rate(const CartesianGrid& g, const FaceVelocity& vel);

// One conservative scalar transport step with MUSCL/Sweby-limited upwind face
// values. Heun in time when time_order == 2, with the velocity evaluated at
// the start and end of the step. Throws StepTooLargeError past the CFL bound.
ScalarField advect_scalar_2d(const CartesianGrid& g, const BoundaryCondition& bc,
                             const ScalarField& z, const FaceVelocity& vel_start,
                             const FaceVelocity& vel_end, double dt, LimiterParams lp,
                             int time_order = 2, int threads = 1);

inline ScalarField advect_scalar_2d(const CartesianGrid& g, const BoundaryCondition& bc,
                                    const ScalarField& z, const FaceVelocity& vel, double dt,
                                    LimiterParams lp, int time_order = 2, int threads = 1) {
  return advect_scalar_2d(g, bc, z, vel, vel, dt, lp, time_order, threads);
}

// Interior integral of z (sum z |K|), fixed order.
double scalar_integral(const CartesianGrid& g, const ScalarField& z);

} // namespace lagflux
