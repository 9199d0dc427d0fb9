#include "lagflux/lagremap1d.hpp"

#include <cmath>
#include <string>

namespace lagflux {

namespace {

// Evolved ring: cells [gx-1, gx+nx], edges [gx-1, gx+nx+1] (edge k = left
// face of cell k). One ghost cell per side is enough for the remap upwinding;
// the second ghost layer feeds its HLL edges and MUSCL stencils.
constexpr int kRing = 1;

} // namespace

std::pair<LagrangianField1d, LagrangianCellGeometry>
lagrange_step_1d(const CartesianGrid& g, const CellField& field, double dt, PerfectGasEos eos) {
  if (g.dim != 1) throw ConfigError("the Lagrange-remap reference solver is 1D only");
  const int lo = g.gx - kRing;
  const int hi = g.gx + g.nx + kRing; // exclusive cell bound

  LagrangianField1d lag;
  LagrangianCellGeometry geom;
  const std::size_t n = std::size_t(g.nxt());
  lag.rho.assign(n, 0.0);
  lag.u.assign(n, 0.0);
  lag.v.assign(n, 0.0);
  lag.E.assign(n, 0.0);
  geom.volume.assign(n, g.dx);
  geom.iface_velocity.assign(n + 1, 0.0);
  geom.iface_pressure.assign(n + 1, 0.0);

  // First-order edge solves on cell values.
  for (int k = lo; k <= hi; ++k) {
    const PrimitiveState wl = primitive_from_conserved(field.state(g, k - 1, 0), eos);
    const PrimitiveState wr = primitive_from_conserved(field.state(g, k, 0), eos);
    const ContactSolution cs = lagrangian_hll(wl, wr, {1.0, 0.0}, eos);
    geom.iface_velocity[std::size_t(k)] = cs.u_star;
    geom.iface_pressure[std::size_t(k)] = cs.p_star;
  }

  for (int k = lo; k < hi; ++k) {
    const double ul = geom.iface_velocity[std::size_t(k)];
    const double ur = geom.iface_velocity[std::size_t(k) + 1];
    const double pl = geom.iface_pressure[std::size_t(k)];
    const double pr = geom.iface_pressure[std::size_t(k) + 1];
    const double vol = g.dx + dt * (ur - ul);
    if (!(vol > 0.0))
      throw StepTooLargeError("Lagrangian volume collapsed at cell " +
                              std::to_string(k - g.gx) + ": " + std::to_string(vol));
    geom.volume[std::size_t(k)] = vol;

    const ConservedState u0 = field.state(g, k, 0);
    // mass per cell is exact: rho^L |K^L| = rho |K|
    const double rho_l = u0.rho * g.dx / vol;
    const double mom_x = (g.dx * u0.mom_x - dt * (pr - pl)) / vol;
    const double mom_y = g.dx * u0.mom_y / vol;
    const double rhoE = (g.dx * u0.rhoE - dt * (pr * ur - pl * ul)) / vol;
    lag.rho[std::size_t(k)] = rho_l;
    lag.u[std::size_t(k)] = mom_x / rho_l;
    lag.v[std::size_t(k)] = mom_y / rho_l;
    lag.E[std::size_t(k)] = rhoE / rho_l;
  }
  return {std::move(lag), std::move(geom)};
}

void remap_flux_step_1d(const CartesianGrid& g, const LagrangianField1d& lag,
                        const LagrangianCellGeometry& geom, double dt,
                        const LagremapOptions& opts, CellField& out,
                        std::array<std::array<double, 4>, 2>* boundary_conv) {
  const int lo = g.gx - kRing;
  const int hi = g.gx + g.nx + kRing;

  // Backward convection: rho scales by the volume ratio, u and E are the
  // same numbers the Lagrange step produced.
  std::vector<double> star_rho(std::size_t(g.nxt()), 0.0);
  for (int k = lo; k < hi; ++k)
    star_rho[std::size_t(k)] = lag.rho[std::size_t(k)] * (geom.volume[std::size_t(k)] / g.dx);

  const auto star_state = [&](int k) -> ConservedState {
    const double r = star_rho[std::size_t(k)];
    return {r, r * lag.u[std::size_t(k)], r * lag.v[std::size_t(k)], r * lag.E[std::size_t(k)]};
  };

  // Eulerian convection with edge velocities v = u*.
  const double lam = dt / g.dx;
  for (int k = g.gx; k < g.gx + g.nx + 1; ++k) {
    const double v_edge = geom.iface_velocity[std::size_t(k)];
    if (std::abs(v_edge) * dt > g.dx)
      throw StepTooLargeError("remap convection CFL violated at edge " +
                              std::to_string(k - g.gx));
  }

  std::array<std::vector<double>, 4> conv_flux;
  for (auto& f : conv_flux) f.assign(std::size_t(g.nx) + 1, 0.0);
  for (int k = g.gx; k <= g.gx + g.nx; ++k) {
    const double v_edge = geom.iface_velocity[std::size_t(k)];
    ConservedState ua{};
    if (opts.remap_order >= 2) {
      // MUSCL traces of the remapped field, per conserved component. The
      // stencil is clamped to the evolved ring, degrading to first order at
      // the two domain-boundary edges.
      const auto clamp_cell = [&](int c) { return c < lo ? lo : c >= hi ? hi - 1 : c; };
      const auto trace = [&](auto getter) {
        const double q0 = getter(clamp_cell(k - 2)), q1 = getter(clamp_cell(k - 1)),
                     q2 = getter(clamp_cell(k)), q3 = getter(clamp_cell(k + 1));
        const FaceTrace t = muscl_face_trace(q0, q1, q2, q3, opts.limiter);
        return v_edge > 0.0 ? t.minus : v_edge < 0.0 ? t.plus : 0.5 * (t.minus + t.plus);
      };
      ua.rho = trace([&](int c) { return star_state(c).rho; });
      ua.mom_x = trace([&](int c) { return star_state(c).mom_x; });
      ua.mom_y = trace([&](int c) { return star_state(c).mom_y; });
      ua.rhoE = trace([&](int c) { return star_state(c).rhoE; });
    } else {
      if (v_edge > 0.0) {
        ua = star_state(k - 1);
      } else if (v_edge < 0.0) {
        ua = star_state(k);
      } else {
        ua = ConservedState{}; // flux is zero anyway
      }
    }
    conv_flux[0][std::size_t(k - g.gx)] = ua.rho * v_edge;
    conv_flux[1][std::size_t(k - g.gx)] = ua.mom_x * v_edge;
    conv_flux[2][std::size_t(k - g.gx)] = ua.mom_y * v_edge;
    conv_flux[3][std::size_t(k - g.gx)] = ua.rhoE * v_edge;
  }

  for (int k = g.gx; k < g.gx + g.nx; ++k) {
    const ConservedState us = star_state(k);
    const std::size_t e = std::size_t(k - g.gx);
    out.comp[0][g.idx(k, 0)] = us.rho - lam * (conv_flux[0][e + 1] - conv_flux[0][e]);
    out.comp[1][g.idx(k, 0)] = us.mom_x - lam * (conv_flux[1][e + 1] - conv_flux[1][e]);
    out.comp[2][g.idx(k, 0)] = us.mom_y - lam * (conv_flux[2][e + 1] - conv_flux[2][e]);
    out.comp[3][g.idx(k, 0)] = us.rhoE - lam * (conv_flux[3][e + 1] - conv_flux[3][e]);
  }

  if (boundary_conv != nullptr) {
    for (int c = 0; c < 4; ++c) {
      (*boundary_conv)[0][std::size_t(c)] = conv_flux[std::size_t(c)][0];
      (*boundary_conv)[1][std::size_t(c)] = conv_flux[std::size_t(c)][std::size_t(g.nx)];
    }
  }
}

LagremapStepResult lagremap_step_1d(const CartesianGrid& g, const BoundaryCondition& bc,
                                    CellField& field, double dt, PerfectGasEos eos,
                                    const LagremapOptions& opts) {
  apply_boundary(g, bc, field);
  auto [lag, geom] = lagrange_step_1d(g, field, dt, eos);
  std::array<std::array<double, 4>, 2> conv{};
  remap_flux_step_1d(g, lag, geom, dt, opts, field, &conv);

  LagremapStepResult res;
  res.dt = dt;
  const auto boundary = [&](int edge_k, const std::array<double, 4>& conv_edge,
                            std::array<double, 4>& acc) {
    const double v_edge = geom.iface_velocity[std::size_t(edge_k)];
    const double p_edge = geom.iface_pressure[std::size_t(edge_k)];
    acc[0] = dt * conv_edge[0];
    acc[1] = dt * (conv_edge[1] + p_edge);
    acc[2] = dt * conv_edge[2];
    acc[3] = dt * (conv_edge[3] + p_edge * v_edge);
  };
  boundary(g.gx, conv[0], res.boundary_flux_left);
  boundary(g.gx + g.nx, conv[1], res.boundary_flux_right);
  return res;
}

} // namespace lagflux
