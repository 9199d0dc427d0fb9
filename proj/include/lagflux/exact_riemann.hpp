#pragma once

#include "lagflux/euler.hpp"

namespace lagflux::oracle {

// Exact solution structure of the 1D Riemann problem for a perfect gas:
// left wave (shock or rarefaction), contact, right wave. Lives in its own
// target so production solvers cannot link it; tests and the reference CLI do.

enum class WaveKind { shock, rarefaction };

struct Wave {
  WaveKind kind = WaveKind::shock;
  double head = 0.0; // outermost signal speed
  double tail = 0.0; // innermost signal speed (== head for a shock)
};

struct ExactRiemannSolution {
  PrimitiveState left;
  PrimitiveState right;
  double gamma = 1.4;
  double p_star = 0.0;
  double u_star = 0.0;
  double rho_star_left = 0.0;
  double rho_star_right = 0.0;
  Wave left_wave;
  Wave right_wave;
};

// Newton iteration on the pressure function to |dp|/p <= 1e-12 (at most 100
// iterations). Throws VacuumError when the data violates the pressure
// positivity condition and ConvergenceError when Newton stalls.
ExactRiemannSolution exact_riemann(const PrimitiveState& left, const PrimitiveState& right,
                                   PerfectGasEos eos);

// Self-similar solution at xi = x/t. Tangential velocity rides the contact.
PrimitiveState sample_exact(const ExactRiemannSolution& sol, double xi);

// Residual of the pressure function at p (zero at p_star); exposed so tests
// can check convergence independently of the reported p_star.
double pressure_function_residual(const ExactRiemannSolution& sol, double p);

} // namespace lagflux::oracle
