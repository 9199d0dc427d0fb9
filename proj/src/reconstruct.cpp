#include "lagflux/reconstruct.hpp"

namespace lagflux {

namespace {

void check_trace(const PrimitiveState& w, int cell_i, int cell_j) {
  if (!(w.rho > 0.0) || !(w.p > 0.0)) {
    CellContext ctx{cell_i, cell_j, -1};
    detail::throw_invalid(w.rho > 0.0 ? "non-physical reconstructed trace, pressure"
                                      : "non-physical reconstructed trace, density",
                          w.rho > 0.0 ? w.p : w.rho, &ctx);
  }
}

} // namespace

EdgeStates muscl_edge_states(const CartesianGrid& g, const CellField& field, PerfectGasEos eos,
                             LimiterParams lp, Axis axis) {
  const int di = axis == Axis::x ? 1 : 0;
  const int dj = axis == Axis::x ? 0 : 1;
  const int n_along = axis == Axis::x ? g.nx : g.ny;
  const int n_across = axis == Axis::x ? g.ny : g.nx;

  EdgeStates out;
  out.minus.resize(std::size_t(n_along + 1) * n_across);
  out.plus.resize(out.minus.size());

  std::size_t e = 0;
  for (int t = 0; t < n_across; ++t) {
    for (int k = 0; k <= n_along; ++k, ++e) {
      // face between cells (k-1) and k along the sweep, transverse index t
      const int i = axis == Axis::x ? g.gx + k : g.gx + t;
      const int j = axis == Axis::x ? g.gy + t : g.gy + k;
      PrimitiveState w[4];
      for (int s = 0; s < 4; ++s) {
        const int off = s - 2;
        w[s] = primitive_from_conserved(field.state(g, i + off * di, j + off * dj), eos);
      }
      PrimitiveState minus, plus;
      const auto trace = [&](double q0, double q1, double q2, double q3, double& m, double& p) {
        const FaceTrace ft = muscl_face_trace(q0, q1, q2, q3, lp);
        m = ft.minus;
        p = ft.plus;
      };
      trace(w[0].rho, w[1].rho, w[2].rho, w[3].rho, minus.rho, plus.rho);
      trace(w[0].u, w[1].u, w[2].u, w[3].u, minus.u, plus.u);
      trace(w[0].v, w[1].v, w[2].v, w[3].v, minus.v, plus.v);
      trace(w[0].p, w[1].p, w[2].p, w[3].p, minus.p, plus.p);
      check_trace(minus, i - di, j - dj);
      check_trace(plus, i, j);
      out.minus[e] = minus;
      out.plus[e] = plus;
    }
  }
  return out;
}

} // namespace lagflux
