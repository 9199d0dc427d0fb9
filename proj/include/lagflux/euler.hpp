#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "lagflux/error.hpp"

namespace lagflux {

// Plane vector. 1D runs keep the y component at zero and use the same types.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

// Conserved cell state: (rho, rho u, rho v, rho E).
struct ConservedState {
  double rho = 0.0;
  double mom_x = 0.0;
  double mom_y = 0.0;
  double rhoE = 0.0;
};

// Primitive state: (rho, u, v, p).
struct PrimitiveState {
  double rho = 0.0;
  double u = 0.0;
  double v = 0.0;
  double p = 0.0;

  bool operator==(const PrimitiveState&) const = default;
};

// Perfect-gas equation of state, p = (gamma - 1) rho (E - |u|^2 / 2).
struct PerfectGasEos {
  double gamma = 1.4;
};

inline PerfectGasEos make_eos(double gamma) {
  if (!(gamma > 1.0) || !(gamma <= 3.0))
    throw ConfigError("adiabatic index must lie in (1, 3], got " + std::to_string(gamma));
  return PerfectGasEos{gamma};
}

// Optional location tag so state errors raised deep in a field loop can name
// the offending cell.
struct CellContext {
  std::int64_t i = -1;
  std::int64_t j = -1;
  std::int64_t step = -1;
};

namespace detail {

inline std::string context_suffix(const CellContext* ctx) {
  if (ctx == nullptr) return {};
  std::string s = " at cell (" + std::to_string(ctx->i) + "," + std::to_string(ctx->j) + ")";
  if (ctx->step >= 0) s += " step " + std::to_string(ctx->step);
  return s;
}

[[noreturn]] inline void throw_invalid(const char* what, double value, const CellContext* ctx) {
  throw InvalidStateError(std::string(what) + " = " + std::to_string(value) +
                          detail::context_suffix(ctx));
}

} // namespace detail

inline PrimitiveState primitive_from_conserved(const ConservedState& U, PerfectGasEos eos,
                                               const CellContext* ctx = nullptr) {
  if (!(U.rho > 0.0)) detail::throw_invalid("non-positive density", U.rho, ctx);
  const double inv_rho = 1.0 / U.rho;
  PrimitiveState w;
  w.rho = U.rho;
  w.u = U.mom_x * inv_rho;
  w.v = U.mom_y * inv_rho;
  const double kinetic = 0.5 * (U.mom_x * U.mom_x + U.mom_y * U.mom_y) * inv_rho;
  w.p = (eos.gamma - 1.0) * (U.rhoE - kinetic);
  if (!(w.p > 0.0)) detail::throw_invalid("non-positive pressure", w.p, ctx);
  return w;
}

inline ConservedState conserved_from_primitive(const PrimitiveState& w, PerfectGasEos eos,
                                               const CellContext* ctx = nullptr) {
  if (!(w.rho > 0.0)) detail::throw_invalid("non-positive density", w.rho, ctx);
  if (!(w.p > 0.0)) detail::throw_invalid("non-positive pressure", w.p, ctx);
  ConservedState U;
  U.rho = w.rho;
  U.mom_x = w.rho * w.u;
  U.mom_y = w.rho * w.v;
  U.rhoE = w.p / (eos.gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
  return U;
}

inline double sound_speed(const PrimitiveState& w, PerfectGasEos eos,
                          const CellContext* ctx = nullptr) {
  if (!(w.rho > 0.0)) detail::throw_invalid("non-positive density", w.rho, ctx);
  if (!(w.p > 0.0)) detail::throw_invalid("non-positive pressure", w.p, ctx);
  return std::sqrt(eos.gamma * w.p / w.rho);
}

// Exact flux of the Euler system through a face with unit normal `n`:
// component l of  U_l (u.n) + pi_l.n   with pi = (0, p e_x, p e_y, p u).
// Kept as the consistency reference for numerical edge fluxes; the solver
// kernels never call it.
inline std::array<double, 4> physical_flux(const PrimitiveState& w, Vec2 n, PerfectGasEos eos,
                                           const CellContext* ctx = nullptr) {
  const ConservedState U = conserved_from_primitive(w, eos, ctx);
  const double un = w.u * n.x + w.v * n.y;
  return {U.rho * un,
          U.mom_x * un + w.p * n.x,
          U.mom_y * un + w.p * n.y,
          U.rhoE * un + w.p * un};
}

} // namespace lagflux
