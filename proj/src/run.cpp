#include "lagflux/run.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lagflux/csv.hpp"

namespace lagflux {

namespace {

constexpr double kPi = std::numbers::pi;

double sinc(double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }

} // namespace

double density_wave_cell_average(const CaseConfig& c, double xc, double yc, double dx,
                                 double dy, double time) {
  // rho(x, y, t) = mean + A sin(2 pi (kx (x - u t) + ky (y - v t))); the cell
  // average multiplies the center value by a sinc per direction.
  const double phase = 2.0 * kPi * (c.wave_kx * (xc - c.wave_u * time) +
                                    c.wave_ky * (yc - c.wave_v * time));
  const double shape = sinc(kPi * c.wave_kx * dx) * sinc(kPi * c.wave_ky * dy);
  return c.wave_mean + c.wave_amplitude * shape * std::sin(phase);
}

void initialize_hydro(const CaseConfig& c, const CartesianGrid& g, CellField& field,
                      MaterialCells* mat) {
  const bool multimat = !c.material_gammas.empty();
  if (multimat && mat == nullptr)
    throw ConfigError("multimaterial case needs material storage");

  for (int j = g.gy; j < g.gy + g.ny; ++j) {
    for (int i = g.gx; i < g.gx + g.nx; ++i) {
      const double x = g.xc(i);
      const double y = g.yc(j);
      PrimitiveState w;
      double gamma = c.gamma;
      int material = 0;
      switch (c.init) {
      case InitKind::riemann_x: w = x < c.x_split ? c.left : c.right; break;
      case InitKind::density_wave:
        w.rho = density_wave_cell_average(c, x, y, g.dx, g.dim == 2 ? g.dy : 0.0, 0.0);
        w.u = c.wave_u;
        w.v = g.dim == 2 ? c.wave_v : 0.0;
        w.p = c.wave_p;
        break;
      case InitKind::regions: {
        int hits = 0;
        for (const RegionSpec& r : c.regions) {
          const bool in_x = x >= r.x_min && x < r.x_max;
          const bool in_y = g.dim == 1 || (y >= r.y_min && y < r.y_max);
          if (in_x && in_y) {
            ++hits;
            w = {r.rho, r.u, r.v, r.p};
            material = r.material - 1;
          }
        }
        if (hits != 1)
          throw ConfigError("cell center (" + std::to_string(x) + "," + std::to_string(y) +
                            ") is covered by " + std::to_string(hits) +
                            " regions; regions must tile the domain exactly");
        gamma = c.gamma_of(material);
        break;
      }
      case InitKind::disk:
        throw ConfigError("init kind 'disk' initializes a scalar field, not a hydro state");
      }
      field.set_state(g, i, j, conserved_from_primitive(w, PerfectGasEos{gamma}));
      if (multimat) {
        for (int k = 0; k < c.material_count(); ++k)
          mat->partial[std::size_t(k)][g.idx(i, j)] = k == material ? w.rho : 0.0;
      }
    }
  }
}

void initialize_scalar(const CaseConfig& c, const CartesianGrid& g, ScalarField& z) {
  // sharp disk sampled on a 4x4 subgrid per cell
  constexpr int kSub = 4;
  for (int j = g.gy; j < g.gy + g.ny; ++j) {
    for (int i = g.gx; i < g.gx + g.nx; ++i) {
      int inside = 0;
      for (int sj = 0; sj < kSub; ++sj) {
        for (int si = 0; si < kSub; ++si) {
          const double x = g.xc(i) + ((si + 0.5) / kSub - 0.5) * g.dx;
          const double y = g.yc(j) + ((sj + 0.5) / kSub - 0.5) * g.dy;
          const double ddx = x - c.disk_cx;
          const double ddy = y - c.disk_cy;
          if (ddx * ddx + ddy * ddy <= c.disk_radius * c.disk_radius) ++inside;
        }
      }
      z.z[g.idx(i, j)] = double(inside) / (kSub * kSub);
    }
  }
}

namespace {

// Merge dump times with t_final; returns sorted unique event times > 0 plus
// an initial dump flag.
struct DumpSchedule {
  bool at_start = false;
  std::vector<double> times;
};

DumpSchedule make_schedule(const CaseConfig& c) {
  DumpSchedule s;
  std::vector<double> t = c.dump_times;
  t.push_back(c.t_final);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  for (double v : t) {
    if (v <= 0.0)
      s.at_start = true;
    else
      s.times.push_back(v);
  }
  if (c.t_final == 0.0) s.at_start = true;
  return s;
}

std::string dump_name(const std::string& prefix, std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "_%04zu.csv", index);
  return prefix + buf;
}

} // namespace

HydroRun run_hydro_case(const CaseConfig& c, bool write_outputs) {
  if (c.solver == SolverKind::advect2d)
    throw ConfigError("advect2d cases run through run_advect_case");

  HydroRun run;
  run.grid = build_grid(c);
  const CartesianGrid& g = run.grid;
  run.state.field = CellField(g);

  const bool multimat = !c.material_gammas.empty();
  if (multimat) {
    run.materials = make_material_set(c.material_gammas);
    run.material_cells = MaterialCells(g, run.materials->count());
  }
  initialize_hydro(c, g, run.state.field, multimat ? &*run.material_cells : nullptr);

  const PerfectGasEos eos{c.gamma};
  const SchemeParams params{make_limiter(c.beta), c.spatial_order, c.time_order};
  const TimeControls controls{c.cfl, c.t_final, c.max_steps};
  const BoundaryCondition bc = c.boundary();

  LagfluxSolver solver(g, bc, eos, params, c.threads,
                       multimat ? &*run.materials : nullptr);
  if (c.solver == SolverKind::lagremap1d && multimat)
    throw ConfigError("lagremap1d does not carry materials");

  const std::uint64_t digest = config_digest(c);
  const DumpSchedule schedule = make_schedule(c);
  std::size_t dump_index = 0;
  const auto dump = [&](double time) {
    if (!write_outputs) return;
    const std::string path = dump_name(c.output_prefix, dump_index++);
    write_text_file(path, field_csv(g, run.state.field, eos,
                                    multimat ? &*run.materials : nullptr,
                                    multimat ? &*run.material_cells : nullptr, digest, time));
    run.summary.dump_paths.push_back(path);
  };
  const auto flush_diagnostics = [&]() {
    if (!write_outputs) return;
    run.summary.diagnostics_path = c.output_prefix + "_diag.csv";
    write_text_file(run.summary.diagnostics_path, diagnostics_csv(run.state.diagnostics));
  };

  if (schedule.at_start) dump(0.0);

  std::size_t next_event = 0;
  try {
    while (run.state.time < c.t_final && run.state.step < c.max_steps) {
      const double limit = next_event < schedule.times.size() ? schedule.times[next_event]
                                                              : c.t_final;
      if (c.solver == SolverKind::lagflux) {
        solver.heun_step(run.state, controls, limit,
                         multimat ? &*run.material_cells : nullptr);
      } else {
        apply_boundary(g, bc, run.state.field);
        const double dt = solver.compute_dt(run.state.field, controls, run.state.time, limit);
        const bool hits = run.state.time + dt >= limit;
        LagremapOptions opts{c.remap_order, make_limiter(c.beta)};
        lagremap_step_1d(g, bc, run.state.field, dt, eos, opts);
        // diagnostics mirror the Lagrange-flux path
        double mr = std::numeric_limits<double>::infinity();
        double mp = std::numeric_limits<double>::infinity();
        for (int i = g.gx; i < g.gx + g.nx; ++i) {
          const PrimitiveState w =
              primitive_from_conserved(run.state.field.state(g, i, 0), eos);
          mr = std::min(mr, w.rho);
          mp = std::min(mp, w.p);
        }
        run.state.time = hits ? limit : run.state.time + dt;
        run.state.step += 1;
        run.state.diagnostics.push_back({run.state.step, run.state.time, dt, mr, mp});
      }
      while (next_event < schedule.times.size() &&
             run.state.time >= schedule.times[next_event]) {
        dump(run.state.time);
        ++next_event;
      }
    }
  } catch (const Error&) {
    flush_diagnostics();
    throw;
  }

  run.summary.steps = run.state.step;
  run.summary.final_time = run.state.time;
  run.summary.truncated_by_max_steps = run.state.time < c.t_final;
  run.summary.min_rho = std::numeric_limits<double>::infinity();
  run.summary.min_p = std::numeric_limits<double>::infinity();
  for (const StepDiagnostics& d : run.state.diagnostics) {
    run.summary.min_rho = std::min(run.summary.min_rho, d.min_rho);
    run.summary.min_p = std::min(run.summary.min_p, d.min_p);
  }
  if (run.state.diagnostics.empty()) run.summary.min_rho = run.summary.min_p = 0.0;

  if (run.summary.truncated_by_max_steps) dump(run.state.time);
  flush_diagnostics();
  return run;
}

AdvectRun run_advect_case(const CaseConfig& c, bool write_outputs) {
  if (c.solver != SolverKind::advect2d)
    throw ConfigError("run_advect_case needs an advect2d solver");

  AdvectRun run;
  run.grid = build_grid(c);
  const CartesianGrid& g = run.grid;
  run.z = ScalarField(g);
  initialize_scalar(c, g, run.z);
  run.initial = run.z;

  const LimiterParams lp = make_limiter(c.beta);
  const BoundaryCondition bc = c.boundary();
  const std::uint64_t digest = config_digest(c);
  const DumpSchedule schedule = make_schedule(c);

  // The CFL rate uses the peak of the reversal factor, so dt is uniform and
  // valid over the whole period.
  const FaceVelocity peak = face_velocity_from_stream(
      g, [&](double x, double y) { return rider_kothe_stream(x, y, 0.0, c.advect_period); });
  const double rate = max_signal_rate(g, peak);
  if (!(rate > 0.0)) throw ConfigError("advection velocity field is identically zero");
  const double dt_cfl = c.cfl / rate;

  std::size_t dump_index = 0;
  const auto dump = [&](double time) {
    if (!write_outputs) return;
    const std::string path = dump_name(c.output_prefix, dump_index++);
    write_text_file(path, scalar_csv(g, run.z, digest, time));
    run.summary.dump_paths.push_back(path);
  };
  if (schedule.at_start) dump(0.0);

  const auto track_extrema = [&]() {
    for (int j = g.gy; j < g.gy + g.ny; ++j)
      for (int i = g.gx; i < g.gx + g.nx; ++i) {
        const double v = run.z.z[g.idx(i, j)];
        run.summary.min_scalar = std::min(run.summary.min_scalar, v);
        run.summary.max_scalar = std::max(run.summary.max_scalar, v);
      }
  };
  run.summary.min_scalar = std::numeric_limits<double>::infinity();
  run.summary.max_scalar = -std::numeric_limits<double>::infinity();
  track_extrema();

  std::size_t next_event = 0;
  while (run.time < c.t_final && run.summary.steps < c.max_steps) {
    const double limit =
        next_event < schedule.times.size() ? schedule.times[next_event] : c.t_final;
    double dt = dt_cfl;
    bool hits = false;
    if (run.time + dt >= limit) {
      dt = limit - run.time;
      hits = true;
    }
    const FaceVelocity v0 = face_velocity_from_stream(g, [&](double x, double y) {
      return rider_kothe_stream(x, y, run.time, c.advect_period);
    });
    const FaceVelocity v1 = face_velocity_from_stream(g, [&](double x, double y) {
      return rider_kothe_stream(x, y, run.time + dt, c.advect_period);
    });
    run.z = advect_scalar_2d(g, bc, run.z, v0, v1, dt, lp, c.time_order, c.threads);
    run.time = hits ? limit : run.time + dt;
    run.summary.steps += 1;
    track_extrema();
    while (next_event < schedule.times.size() && run.time >= schedule.times[next_event]) {
      dump(run.time);
      ++next_event;
    }
  }
  run.summary.final_time = run.time;
  run.summary.truncated_by_max_steps = run.time < c.t_final;
  if (run.summary.truncated_by_max_steps) dump(run.time);
  return run;
}

RunSummary run_case(const CaseConfig& c) {
  if (c.solver == SolverKind::advect2d) return run_advect_case(c, true).summary;
  return run_hydro_case(c, true).summary;
}

} // namespace lagflux
