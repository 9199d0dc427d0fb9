#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lagflux {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A physical state was required but density or pressure is not positive.
class InvalidStateError : public Error {
public:
  using Error::Error;
};

// Malformed or out-of-range case configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

// Riemann data would generate vacuum; the exact solver refuses to proceed.
class VacuumError : public Error {
public:
  using Error::Error;
};

// An iterative solve failed to reach its tolerance.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

// The time step was too large for a substep (collapsed Lagrangian volume,
// convection CFL violation).
class StepTooLargeError : public Error {
public:
  using Error::Error;
};

// A finite-volume update produced a non-physical cell. Carries enough
// context to locate the failure in a run.
class PositivityError : public Error {
public:
  PositivityError(const std::string& what, std::int64_t cell_i, std::int64_t cell_j,
                  std::int64_t step, double dt)
      : Error(what), cell_i(cell_i), cell_j(cell_j), step(step), dt(dt) {}

  std::int64_t cell_i = -1;
  std::int64_t cell_j = -1;
  std::int64_t step = -1;
  double dt = 0.0;
};

// Threaded and serial runs disagreed bit for bit. Always a bug, never noise.
class DeterminismError : public Error {
public:
  using Error::Error;
};

} // namespace lagflux
