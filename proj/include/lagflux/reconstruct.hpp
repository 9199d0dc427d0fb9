#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "lagflux/euler.hpp"
#include "lagflux/grid.hpp"

namespace lagflux {

struct LimiterParams {
  double beta = 1.5; // Sweby coefficient; 1 is minmod, 2 is superbee
};

inline LimiterParams make_limiter(double beta) {
  if (!(beta >= 1.0) || !(beta <= 2.0))
    throw ConfigError("limiter beta must lie in [1, 2], got " + std::to_string(beta));
  return LimiterParams{beta};
}

// Sweby limiter: 0 when the one-sided slopes disagree in sign, otherwise
// sign(a) * max(min(|a|, beta |b|), min(beta |a|, |b|)).
inline double sweby_limiter(double a, double b, LimiterParams lp) {
  if (!(a * b > 0.0)) return 0.0;
  const double aa = std::abs(a);
  const double ab = std::abs(b);
  const double m = std::max(std::min(aa, lp.beta * ab), std::min(lp.beta * aa, ab));
  return a > 0.0 ? m : -m;
}

// Limited cell slope from the three-point stencil (qm, q0, qp).
inline double limited_slope(double qm, double q0, double qp, LimiterParams lp) {
  return sweby_limiter(qp - q0, q0 - qm, lp);
}

// Left/right traces at the face between the cells holding q1 and q2, from the
// four-cell stencil (q0, q1, q2, q3) along the sweep direction.
struct FaceTrace {
  double minus; // trace leaving the low-side cell
  double plus;  // trace leaving the high-side cell
};

inline FaceTrace muscl_face_trace(double q0, double q1, double q2, double q3,
                                  LimiterParams lp) {
  const double s1 = limited_slope(q0, q1, q2, lp);
  const double s2 = limited_slope(q1, q2, q3, lp);
  return {q1 + 0.5 * s1, q2 - 0.5 * s2};
}

// Primitive traces for every face of the interior (including the two domain
// boundary faces per row/column) along one axis. Ghosts of `field` must be
// filled. minus[k]/plus[k] are the low-side and high-side traces of face k,
// faces ordered x-fastest.
struct EdgeStates {
  std::vector<PrimitiveState> minus;
  std::vector<PrimitiveState> plus;
};

EdgeStates muscl_edge_states(const CartesianGrid& g, const CellField& field, PerfectGasEos eos,
                             LimiterParams lp, Axis axis);

} // namespace lagflux
