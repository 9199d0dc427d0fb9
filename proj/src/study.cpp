#include "lagflux/study.hpp"

#include <cmath>
#include <ostream>

#include "lagflux/csv.hpp"

namespace lagflux::oracle {

std::array<double, 3> l1_error_vs_exact(const CaseConfig& config, const CartesianGrid& g,
                                        const CellField& field, double time) {
  if (config.init != InitKind::riemann_x)
    throw ConfigError("exact-solution errors need riemann_x initial data");
  if (!(time > 0.0)) throw ConfigError("exact-solution errors need time > 0");

  const PerfectGasEos eos{config.gamma};
  const ExactRiemannSolution sol = exact_riemann(config.left, config.right, eos);

  std::array<double, 3> err{0.0, 0.0, 0.0};
  for (int i = g.gx; i < g.gx + g.nx; ++i) {
    const PrimitiveState ref = sample_exact(sol, (g.xc(i) - config.x_split) / time);
    const PrimitiveState num = primitive_from_conserved(field.state(g, i, g.gy), eos);
    err[0] += std::abs(num.rho - ref.rho);
    err[1] += std::abs(num.u - ref.u);
    err[2] += std::abs(num.p - ref.p);
  }
  for (double& e : err) e *= g.dx;
  return err;
}

std::vector<ConvergenceRow> convergence_study(const CaseConfig& config,
                                              const std::vector<int>& meshes) {
  if (config.dimensions != 1 || config.init != InitKind::riemann_x)
    throw ConfigError("convergence studies run 1D riemann_x cases");
  std::vector<ConvergenceRow> rows;
  for (int n : meshes) {
    CaseConfig c = config;
    c.nx = n;
    const HydroRun run = run_hydro_case(c, false);
    const std::array<double, 3> err =
        l1_error_vs_exact(c, run.grid, run.state.field, run.state.time);
    ConvergenceRow row;
    row.n = n;
    row.l1_rho = err[0];
    row.l1_u = err[1];
    row.l1_p = err[2];
    if (!rows.empty() && rows.back().n != n)
      row.order = std::log(rows.back().l1_rho / row.l1_rho) / std::log(double(n) / rows.back().n);
    rows.push_back(row);
  }
  return rows;
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  out << "N,L1_rho,L1_u,L1_p,order\n";
  for (const ConvergenceRow& r : rows)
    out << r.n << ',' << format_g17(r.l1_rho) << ',' << format_g17(r.l1_u) << ','
        << format_g17(r.l1_p) << ',' << format_g17(r.order) << '\n';
}

} // namespace lagflux::oracle
