#pragma once

#include <algorithm>
#include <cmath>

#include "lagflux/euler.hpp"

namespace lagflux {

// Contact pressure and normal contact velocity returned by the Lagrangian
// HLL solver.
struct ContactSolution {
  double p_star = 0.0;
  double u_star = 0.0;
};

// Two-wave approximate Riemann solver in Lagrangian (mass) coordinates:
//   p* = (rho_R p_L + rho_L p_R)/(rho_L + rho_R)
//        - rho_L rho_R/(rho_L + rho_R) * max(c_L, c_R) * (u_R - u_L)
//   u* = (rho_L u_L + rho_R u_R)/(rho_L + rho_R)
//        - (p_R - p_L) / (max(c_L, c_R) * (rho_L + rho_R))
// with u the velocity component along `n`. The wavespeed is max(c_L, c_R),
// deliberately not a sharper Davis/Einfeldt estimate. p* may come out
// negative for strong enough rarefaction data; it is an interface pressure,
// not a state, and positivity of cell states is checked where states are
// formed. Each side carries its own EOS so mixed-gamma cells work unchanged.
inline ContactSolution lagrangian_hll(const PrimitiveState& wl, const PrimitiveState& wr,
                                      Vec2 n, PerfectGasEos eos_l, PerfectGasEos eos_r) {
  const double ul = wl.u * n.x + wl.v * n.y;
  const double ur = wr.u * n.x + wr.v * n.y;
  const double cl = sound_speed(wl, eos_l);
  const double cr = sound_speed(wr, eos_r);
  const double cmax = std::max(cl, cr);
  const double rho_sum = wl.rho + wr.rho;
  ContactSolution s;
  s.p_star = (wr.rho * wl.p + wl.rho * wr.p) / rho_sum -
             (wl.rho * wr.rho / rho_sum) * cmax * (ur - ul);
  s.u_star = (wl.rho * ul + wr.rho * ur) / rho_sum - (wr.p - wl.p) / (cmax * rho_sum);
  return s;
}

inline ContactSolution lagrangian_hll(const PrimitiveState& wl, const PrimitiveState& wr,
                                      Vec2 n, PerfectGasEos eos) {
  return lagrangian_hll(wl, wr, n, eos, eos);
}

} // namespace lagflux
