#include "lagflux/exact_riemann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lagflux::oracle {

namespace {

struct Side {
  double rho, u, p, c;
};

// Value and derivative of the one-sided pressure function f(p; side):
// shock branch (p > p_side) from Rankine-Hugoniot, rarefaction branch from
// the isentrope.
void side_function(const Side& s, double gamma, double p, double& f, double& df) {
  if (p > s.p) {
    const double A = 2.0 / ((gamma + 1.0) * s.rho);
    const double B = (gamma - 1.0) / (gamma + 1.0) * s.p;
    const double root = std::sqrt(A / (p + B));
    f = (p - s.p) * root;
    df = root * (1.0 - 0.5 * (p - s.p) / (p + B));
  } else {
    const double ex = (gamma - 1.0) / (2.0 * gamma);
    f = 2.0 * s.c / (gamma - 1.0) * (std::pow(p / s.p, ex) - 1.0);
    df = std::pow(p / s.p, -(gamma + 1.0) / (2.0 * gamma)) / (s.rho * s.c);
  }
}

double full_function(const Side& l, const Side& r, double gamma, double p, double* dfp = nullptr,
                     double* magnitude = nullptr) {
  double fl, dfl, fr, dfr;
  side_function(l, gamma, p, fl, dfl);
  side_function(r, gamma, p, fr, dfr);
  if (dfp != nullptr) *dfp = dfl + dfr;
  if (magnitude != nullptr)
    *magnitude = std::abs(fl) + std::abs(fr) + std::abs(r.u - l.u);
  return fl + fr + (r.u - l.u);
}

double initial_guess(const Side& l, const Side& r, double gamma) {
  // Linearized (primitive-variable) guess, floored away from zero.
  const double p_pv =
      0.5 * (l.p + r.p) - 0.125 * (r.u - l.u) * (l.rho + r.rho) * (l.c + r.c);
  const double p_min = std::min(l.p, r.p);
  const double p_max = std::max(l.p, r.p);
  if (p_pv > p_min && p_pv < p_max && p_max / p_min < 2.0) return p_pv;
  if (p_pv < p_min) {
    // two-rarefaction approximation
    const double ex = (gamma - 1.0) / (2.0 * gamma);
    const double num = l.c + r.c - 0.5 * (gamma - 1.0) * (r.u - l.u);
    const double den = l.c / std::pow(l.p, ex) + r.c / std::pow(r.p, ex);
    return std::pow(num / den, 1.0 / ex);
  }
  // two-shock approximation
  const double gl = std::sqrt((2.0 / ((gamma + 1.0) * l.rho)) /
                              (std::max(p_pv, 0.0) + (gamma - 1.0) / (gamma + 1.0) * l.p));
  const double gr = std::sqrt((2.0 / ((gamma + 1.0) * r.rho)) /
                              (std::max(p_pv, 0.0) + (gamma - 1.0) / (gamma + 1.0) * r.p));
  const double p_ts = (gl * l.p + gr * r.p - (r.u - l.u)) / (gl + gr);
  return std::max(p_ts, 1e-12 * (l.p + r.p));
}

Wave left_wave_of(const Side& l, double gamma, double p_star, double u_star) {
  Wave w;
  if (p_star > l.p) {
    w.kind = WaveKind::shock;
    const double q = std::sqrt((gamma + 1.0) / (2.0 * gamma) * p_star / l.p +
                               (gamma - 1.0) / (2.0 * gamma));
    w.head = w.tail = l.u - l.c * q;
  } else {
    w.kind = WaveKind::rarefaction;
    const double c_star = l.c * std::pow(p_star / l.p, (gamma - 1.0) / (2.0 * gamma));
    w.head = l.u - l.c;
    w.tail = u_star - c_star;
  }
  return w;
}

Wave right_wave_of(const Side& r, double gamma, double p_star, double u_star) {
  Wave w;
  if (p_star > r.p) {
    w.kind = WaveKind::shock;
    const double q = std::sqrt((gamma + 1.0) / (2.0 * gamma) * p_star / r.p +
                               (gamma - 1.0) / (2.0 * gamma));
    w.head = w.tail = r.u + r.c * q;
  } else {
    w.kind = WaveKind::rarefaction;
    const double c_star = r.c * std::pow(p_star / r.p, (gamma - 1.0) / (2.0 * gamma));
    w.head = r.u + r.c;
    w.tail = u_star + c_star;
  }
  return w;
}

double star_density(const Side& s, double gamma, double p_star) {
  const double ratio = p_star / s.p;
  if (p_star > s.p) {
    const double mu = (gamma - 1.0) / (gamma + 1.0);
    return s.rho * (ratio + mu) / (mu * ratio + 1.0);
  }
  return s.rho * std::pow(ratio, 1.0 / gamma);
}

} // namespace

ExactRiemannSolution exact_riemann(const PrimitiveState& left, const PrimitiveState& right,
                                   PerfectGasEos eos) {
  const double gamma = eos.gamma;
  const Side l{left.rho, left.u, left.p, sound_speed(left, eos)};
  const Side r{right.rho, right.u, right.p, sound_speed(right, eos)};

  // Pressure positivity condition; beyond it the solution opens a vacuum.
  if (2.0 * l.c / (gamma - 1.0) + 2.0 * r.c / (gamma - 1.0) <= r.u - l.u)
    throw VacuumError("Riemann data generates vacuum (velocity divergence too strong)");

  double p = initial_guess(l, r, gamma);
  bool converged = false;
  for (int it = 0; it < 100; ++it) {
    double df, magnitude;
    const double f = full_function(l, r, gamma, p, &df, &magnitude);
    // Residual at the round-off floor of its own terms: the root is located
    // as well as double precision allows (near-vacuum data can pin p no
    // tighter than this).
    if (std::abs(f) <= 4.0 * std::numeric_limits<double>::epsilon() * magnitude) {
      converged = true;
      break;
    }
    double p_new = p - f / df;
    if (p_new <= 0.0) p_new = 0.5 * p; // keep the iterate in the domain
    const double change = std::abs(p_new - p) / (0.5 * (p_new + p));
    p = p_new;
    if (change <= 1e-12) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw ConvergenceError("exact Riemann pressure iteration did not converge in 100 steps");

  ExactRiemannSolution sol;
  sol.left = left;
  sol.right = right;
  sol.gamma = gamma;
  sol.p_star = p;
  double fl, dfl, fr, dfr;
  side_function(l, gamma, p, fl, dfl);
  side_function(r, gamma, p, fr, dfr);
  sol.u_star = 0.5 * (l.u + r.u) + 0.5 * (fr - fl);
  sol.rho_star_left = star_density(l, gamma, p);
  sol.rho_star_right = star_density(r, gamma, p);
  sol.left_wave = left_wave_of(l, gamma, p, sol.u_star);
  sol.right_wave = right_wave_of(r, gamma, p, sol.u_star);
  return sol;
}

double pressure_function_residual(const ExactRiemannSolution& sol, double p) {
  PerfectGasEos eos{sol.gamma};
  const Side l{sol.left.rho, sol.left.u, sol.left.p, sound_speed(sol.left, eos)};
  const Side r{sol.right.rho, sol.right.u, sol.right.p, sound_speed(sol.right, eos)};
  return full_function(l, r, sol.gamma, p);
}

PrimitiveState sample_exact(const ExactRiemannSolution& sol, double xi) {
  const double g = sol.gamma;
  const PerfectGasEos eos{g};

  if (xi <= sol.u_star) {
    // left of the contact
    const PrimitiveState& w = sol.left;
    const double c = sound_speed(w, eos);
    const Wave& wave = sol.left_wave;
    if (xi <= wave.head) return w;
    if (wave.kind == WaveKind::shock || xi >= wave.tail)
      return {sol.rho_star_left, sol.u_star, w.v, sol.p_star};
    // inside the left fan
    const double base = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * c) * (w.u - xi);
    PrimitiveState f;
    f.rho = w.rho * std::pow(base, 2.0 / (g - 1.0));
    f.u = 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * w.u + xi);
    f.v = w.v;
    f.p = w.p * std::pow(base, 2.0 * g / (g - 1.0));
    return f;
  }

  // right of the contact
  const PrimitiveState& w = sol.right;
  const double c = sound_speed(w, eos);
  const Wave& wave = sol.right_wave;
  if (xi >= wave.head) return w;
  if (wave.kind == WaveKind::shock || xi <= wave.tail)
    return {sol.rho_star_right, sol.u_star, w.v, sol.p_star};
  const double base = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * c) * (w.u - xi);
  PrimitiveState f;
  f.rho = w.rho * std::pow(base, 2.0 / (g - 1.0));
  f.u = 2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * w.u + xi);
  f.v = w.v;
  f.p = w.p * std::pow(base, 2.0 * g / (g - 1.0));
  return f;
}

} // namespace lagflux::oracle
