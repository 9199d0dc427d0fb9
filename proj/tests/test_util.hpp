#pragma once

#include <cmath>
#include <random>

#include "lagflux/euler.hpp"

namespace lagflux::testing {

// Deterministic generator of physical states: log-uniform rho and p, uniform
// velocities.
class StateGen {
public:
  explicit StateGen(std::uint64_t seed = 0x5eedULL) : rng_(seed) {}

  PrimitiveState primitive(bool two_d = false) {
    PrimitiveState w;
    w.rho = std::exp(log_rho_(rng_));
    w.p = std::exp(log_p_(rng_));
    w.u = vel_(rng_);
    w.v = two_d ? vel_(rng_) : 0.0;
    return w;
  }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  std::mt19937_64& rng() { return rng_; }

private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> log_rho_{std::log(0.1), std::log(10.0)};
  std::uniform_real_distribution<double> log_p_{std::log(0.01), std::log(10.0)};
  std::uniform_real_distribution<double> vel_{-5.0, 5.0};
};

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

} // namespace lagflux::testing
