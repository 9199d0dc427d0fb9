#include "lagflux/solver.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <utility>

namespace lagflux {

namespace {

// Record the smallest failing linear index seen by any thread; throwing is
// deferred until after the parallel region so the reported failure does not
// depend on thread interleaving.
struct FailureRecord {
  std::atomic<std::int64_t> where{std::numeric_limits<std::int64_t>::max()};

  void note(std::int64_t idx) {
    std::int64_t cur = where.load(std::memory_order_relaxed);
    while (idx < cur && !where.compare_exchange_weak(cur, idx, std::memory_order_relaxed)) {
    }
  }
  bool failed() const { return where.load() != std::numeric_limits<std::int64_t>::max(); }
};

EdgeFlux contact_flux(const ConservedState& um, const ConservedState& up, Vec2 n,
                      const ContactSolution& cs) {
  ConservedState ua;
  if (cs.u_star > 0.0) {
    ua = um;
  } else if (cs.u_star < 0.0) {
    ua = up;
  } else {
    ua = {0.5 * (um.rho + up.rho), 0.5 * (um.mom_x + up.mom_x), 0.5 * (um.mom_y + up.mom_y),
          0.5 * (um.rhoE + up.rhoE)};
  }
  EdgeFlux f;
  f.mass = ua.rho * cs.u_star;
  f.mom_x = ua.mom_x * cs.u_star + cs.p_star * n.x;
  f.mom_y = ua.mom_y * cs.u_star + cs.p_star * n.y;
  f.energy = ua.rhoE * cs.u_star + cs.p_star * cs.u_star;
  return f;
}

} // namespace

EdgeFlux edge_flux(const PrimitiveState& w_minus, const PrimitiveState& w_plus, Vec2 n,
                   PerfectGasEos eos_minus, PerfectGasEos eos_plus) {
  const ContactSolution cs = lagrangian_hll(w_minus, w_plus, n, eos_minus, eos_plus);
  const ConservedState um = conserved_from_primitive(w_minus, eos_minus);
  const ConservedState up = conserved_from_primitive(w_plus, eos_plus);
  return contact_flux(um, up, n, cs);
}

double compute_dt(const CartesianGrid& g, const CellField& field, PerfectGasEos eos,
                  const TimeControls& controls, double time, double limit_time) {
  LagfluxSolver solver(g, BoundaryCondition{}, eos, SchemeParams{}, 1);
  return solver.compute_dt(field, controls, time, limit_time);
}

LagfluxSolver::LagfluxSolver(const CartesianGrid& g, const BoundaryCondition& bc,
                             PerfectGasEos eos, SchemeParams params, int threads,
                             const MaterialSet* materials)
    : grid_(g), bc_(bc), eos_(eos), params_(params), threads_(threads < 1 ? 1 : threads),
      material_set_(materials), predictor_(g) {
  if (g.nx < 1 || g.ny < 1) throw ConfigError("grid has no interior cells");
  if (g.gx < 2 || (g.dim == 2 && g.gy < 2))
    throw ConfigError("MUSCL stencils need at least two ghost layers");
  validate_boundary(bc, g.dim);

  const std::size_t cells = std::size_t(g.cell_count());
  for (int s = 0; s < 2; ++s) {
    for (auto& a : prim_[s]) a.assign(cells, 0.0);
    if (material_set_ != nullptr) {
      gamma_[s].assign(cells, eos.gamma);
      frac_[s].assign(std::size_t(material_set_->count()), std::vector<double>(cells, 0.0));
    }
  }
  const std::size_t nex = std::size_t(g.nx + 1) * g.ny;
  const std::size_t ney = g.dim == 2 ? std::size_t(g.nx) * (g.ny + 1) : 0;
  for (auto* fs : {&flux1_, &flux2_}) {
    for (auto& a : fs->x) a.assign(nex, 0.0);
    for (auto& a : fs->y) a.assign(ney, 0.0);
    fs->ustar_x.assign(nex, 0.0);
    fs->ustar_y.assign(ney, 0.0);
  }
  if (material_set_ != nullptr) predictor_mat_ = MaterialCells(g, material_set_->count());
}

void LagfluxSolver::fill_all_ghosts(CellField& field, MaterialCells* mat, int slot) {
  apply_boundary(grid_, bc_, field);
  if (mat == nullptr || material_set_ == nullptr) return;

  for (auto& pf : mat->partial) fill_ghosts(grid_, bc_, GhostParity::even, pf.data());

  const int n_mat = material_set_->count();
  const double* rho = field.comp[0].data();
  const std::int64_t cells = grid_.cell_count();
  FailureRecord fail;
#pragma omp parallel for schedule(static) num_threads(threads_)
  for (std::int64_t c = 0; c < cells; ++c) {
    double ysum_gamma = 0.0;
    int pure = -1;
    for (int k = 0; k < n_mat; ++k) {
      const double raw = mat->partial[std::size_t(k)][c] / rho[c];
      double y = raw;
      if (y < 0.0 || y > 1.0) {
        if (raw < -1e-11 || raw > 1.0 + 1e-11) {
          fail.note(c);
          y = 0.0;
        } else {
          y = raw < 0.0 ? 0.0 : 1.0;
        }
      }
      frac_[slot][std::size_t(k)][c] = y;
      if (y == 1.0) pure = k;
      ysum_gamma += y / (material_set_->gammas[std::size_t(k)] - 1.0);
    }
    gamma_[slot][c] = pure >= 0 ? material_set_->gammas[std::size_t(pure)]
                                : 1.0 + 1.0 / ysum_gamma;
  }
  if (fail.failed()) {
    const std::int64_t c = fail.where.load();
    const std::int64_t i = c % grid_.nxt() - grid_.gx;
    const std::int64_t j = c / grid_.nxt() - grid_.gy;
    throw InvalidStateError("mass fraction out of [0,1] beyond round-off at cell (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
  }
}

void LagfluxSolver::build_primitives(const CellField& field, int slot, std::int64_t step) {
  const std::int64_t cells = grid_.cell_count();
  const double* rho_in = field.comp[0].data();
  const double* mx = field.comp[1].data();
  const double* my = field.comp[2].data();
  const double* re = field.comp[3].data();
  double* rho = prim_[slot][0].data();
  double* u = prim_[slot][1].data();
  double* v = prim_[slot][2].data();
  double* p = prim_[slot][3].data();
  const double* gamma_cells = material_set_ != nullptr ? gamma_[slot].data() : nullptr;
  const double gamma0 = eos_.gamma;

  FailureRecord fail;
#pragma omp parallel for schedule(static) num_threads(threads_)
  for (std::int64_t c = 0; c < cells; ++c) {
    const double r = rho_in[c];
    if (!(r > 0.0)) {
      fail.note(c);
      rho[c] = u[c] = v[c] = p[c] = 0.0;
      continue;
    }
    const double inv = 1.0 / r;
    const double uu = mx[c] * inv;
    const double vv = my[c] * inv;
    const double g = gamma_cells != nullptr ? gamma_cells[c] : gamma0;
    const double pp = (g - 1.0) * (re[c] - 0.5 * (mx[c] * mx[c] + my[c] * my[c]) * inv);
    rho[c] = r;
    u[c] = uu;
    v[c] = vv;
    p[c] = pp;
    if (!(pp > 0.0)) fail.note(c);
  }
  if (fail.failed()) {
    const std::int64_t c = fail.where.load();
    const CellContext ctx{c % grid_.nxt() - grid_.gx, c / grid_.nxt() - grid_.gy, step};
    const double g = gamma_cells != nullptr ? gamma_cells[c] : gamma0;
    primitive_from_conserved({rho_in[c], mx[c], my[c], re[c]}, PerfectGasEos{g}, &ctx);
    throw InvalidStateError("unreachable"); // the call above always throws here
  }
}

void LagfluxSolver::compute_fluxes(FluxSet& fs, int slot, std::int64_t step) {
  const double* rho = prim_[slot][0].data();
  const double* u = prim_[slot][1].data();
  const double* v = prim_[slot][2].data();
  const double* p = prim_[slot][3].data();
  const double* gamma_cells = material_set_ != nullptr ? gamma_[slot].data() : nullptr;
  const double gamma0 = eos_.gamma;
  const LimiterParams lp = params_.limiter;
  const bool muscl = params_.spatial_order >= 2;
  const int nx = grid_.nx, ny = grid_.ny, nxt = grid_.nxt();

  FailureRecord fail;
  const std::int64_t nex = std::int64_t(nx + 1) * ny;

  const auto sweep = [&](Axis axis) {
    const bool is_x = axis == Axis::x;
    const std::int64_t n_edges = is_x ? nex : std::int64_t(nx) * (ny + 1);
    const std::int64_t stride = is_x ? 1 : nxt;
    const int edges_along = is_x ? nx + 1 : nx; // fastest-varying extent
    const Vec2 normal = is_x ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
    auto& out = is_x ? fs.x : fs.y;
    auto& ustar = is_x ? fs.ustar_x : fs.ustar_y;

#pragma omp parallel for schedule(static) num_threads(threads_)
    for (std::int64_t e = 0; e < n_edges; ++e) {
      const int a = int(e % edges_along);
      const int b = int(e / edges_along);
      // chigh: cell on the +normal side of the face
      const std::int64_t chigh = grid_.idx(grid_.gx + a, grid_.gy + b);
      const std::int64_t clow = chigh - stride;
      PrimitiveState wm, wp;
      if (muscl) {
        FaceTrace t = muscl_face_trace(rho[clow - stride], rho[clow], rho[chigh],
                                       rho[chigh + stride], lp);
        wm.rho = t.minus;
        wp.rho = t.plus;
        t = muscl_face_trace(u[clow - stride], u[clow], u[chigh], u[chigh + stride], lp);
        wm.u = t.minus;
        wp.u = t.plus;
        t = muscl_face_trace(v[clow - stride], v[clow], v[chigh], v[chigh + stride], lp);
        wm.v = t.minus;
        wp.v = t.plus;
        t = muscl_face_trace(p[clow - stride], p[clow], p[chigh], p[chigh + stride], lp);
        wm.p = t.minus;
        wp.p = t.plus;
      } else {
        wm = {rho[clow], u[clow], v[clow], p[clow]};
        wp = {rho[chigh], u[chigh], v[chigh], p[chigh]};
      }
      if (!(wm.rho > 0.0) || !(wm.p > 0.0) || !(wp.rho > 0.0) || !(wp.p > 0.0)) {
        fail.note((is_x ? 0 : nex) + e);
        ustar[e] = 0.0;
        for (int c = 0; c < 4; ++c) out[c][std::size_t(e)] = 0.0;
        continue;
      }
      const PerfectGasEos el{gamma_cells != nullptr ? gamma_cells[clow] : gamma0};
      const PerfectGasEos er{gamma_cells != nullptr ? gamma_cells[chigh] : gamma0};
      const ContactSolution cs = lagrangian_hll(wm, wp, normal, el, er);
      ustar[e] = cs.u_star;
      const EdgeFlux f =
          contact_flux(conserved_from_primitive(wm, el), conserved_from_primitive(wp, er),
                       normal, cs);
      out[0][std::size_t(e)] = f.mass;
      out[1][std::size_t(e)] = f.mom_x;
      out[2][std::size_t(e)] = f.mom_y;
      out[3][std::size_t(e)] = f.energy;
    }
  };

  sweep(Axis::x);
  if (grid_.dim == 2) sweep(Axis::y);

  if (fail.failed()) {
    const std::int64_t code = fail.where.load();
    const bool is_x = code < nex;
    const std::int64_t e = is_x ? code : code - nex;
    const int along = is_x ? nx + 1 : nx;
    const std::int64_t i = e % along;
    const std::int64_t j = e / along;
    throw InvalidStateError("non-physical reconstructed trace at " +
                            std::string(is_x ? "x" : "y") + "-face (" + std::to_string(i) +
                            "," + std::to_string(j) + ") step " + std::to_string(step));
  }
}

void LagfluxSolver::apply_update(const CellField& base, const FluxSet& a, const FluxSet* b,
                                 double dt, CellField& out, std::int64_t step, double* min_rho,
                                 double* min_p) {
  const int nx = grid_.nx, ny = grid_.ny;
  const double lam_x = dt / grid_.dx;
  const double lam_y = dt / grid_.dy;
  const bool two = b != nullptr;
  const bool dim2 = grid_.dim == 2;
  const std::int64_t n_cells = std::int64_t(nx) * ny;

  FailureRecord fail;
  double mr = std::numeric_limits<double>::infinity();
  double me = std::numeric_limits<double>::infinity();

#pragma omp parallel for schedule(static) num_threads(threads_) reduction(min : mr, me)
  for (std::int64_t cc = 0; cc < n_cells; ++cc) {
    const int i = int(cc % nx);
    const int j = int(cc / nx);
    const std::int64_t cell = grid_.idx(grid_.gx + i, grid_.gy + j);
    const std::size_t exl = std::size_t(j) * (nx + 1) + i;
    const std::size_t exr = exl + 1;
    const std::size_t eyb = std::size_t(j) * nx + i;
    const std::size_t eyt = eyb + std::size_t(nx);

    double vals[4];
    for (int c = 0; c < 4; ++c) {
      const double fxl = two ? 0.5 * (a.x[c][exl] + b->x[c][exl]) : a.x[c][exl];
      const double fxr = two ? 0.5 * (a.x[c][exr] + b->x[c][exr]) : a.x[c][exr];
      double val = base.comp[c][cell] - lam_x * (fxr - fxl);
      if (dim2) {
        const double fyb = two ? 0.5 * (a.y[c][eyb] + b->y[c][eyb]) : a.y[c][eyb];
        const double fyt = two ? 0.5 * (a.y[c][eyt] + b->y[c][eyt]) : a.y[c][eyt];
        val -= lam_y * (fyt - fyb);
      }
      vals[c] = val;
    }
    out.comp[0][cell] = vals[0];
    out.comp[1][cell] = vals[1];
    out.comp[2][cell] = vals[2];
    out.comp[3][cell] = vals[3];

    // gamma-independent positivity: rho and internal energy density
    const double eint =
        vals[3] - 0.5 * (vals[1] * vals[1] + vals[2] * vals[2]) / vals[0];
    if (!(vals[0] > 0.0) || !(eint > 0.0)) {
      fail.note(cc);
    } else {
      mr = std::min(mr, vals[0]);
      me = std::min(me, eint);
    }
  }

  if (fail.failed()) {
    const std::int64_t cc = fail.where.load();
    const std::int64_t i = cc % nx;
    const std::int64_t j = cc / nx;
    const std::int64_t cell = grid_.idx(int(grid_.gx + i), int(grid_.gy + j));
    const double r = out.comp[0][cell];
    const double eint = out.comp[3][cell] -
                        0.5 *
                            (out.comp[1][cell] * out.comp[1][cell] +
                             out.comp[2][cell] * out.comp[2][cell]) /
                            r;
    throw PositivityError("update lost positivity at cell (" + std::to_string(i) + "," +
                              std::to_string(j) + "): rho = " + std::to_string(r) +
                              ", internal energy density = " + std::to_string(eint) +
                              ", step " + std::to_string(step) + ", dt " + std::to_string(dt),
                          i, j, step, dt);
  }
  if (min_rho != nullptr) *min_rho = mr;
  if (min_p != nullptr) *min_p = me; // internal energy density; caller scales by (gamma-1)
}

void LagfluxSolver::update_partials(const MaterialCells& base, const FluxSet& a,
                                    const FluxSet* b, double dt, int slot_a, int slot_b,
                                    MaterialCells& out) {
  const int n_mat = material_set_->count();
  const int nx = grid_.nx, ny = grid_.ny;
  const double lam_x = dt / grid_.dx;
  const double lam_y = dt / grid_.dy;
  const bool dim2 = grid_.dim == 2;
  const std::int64_t n_cells = std::int64_t(nx) * ny;

  // Per-stage, per-material flux through one edge; the last material takes
  // the complement so the per-material fluxes sum to the mass flux bitwise.
  const auto edge_material_flux = [&](const FluxSet& fs, int slot, bool is_x, std::size_t e,
                                      std::int64_t clow, std::int64_t chigh, int k0,
                                      double* out_k) {
    const double mass = is_x ? fs.x[0][e] : fs.y[0][e];
    const double us = is_x ? fs.ustar_x[e] : fs.ustar_y[e];
    const std::int64_t up = us > 0.0 ? clow : chigh;
    double rest = mass;
    for (int k = 0; k < n_mat - 1; ++k) {
      const double fk = us == 0.0 ? 0.0 : mass * frac_[slot][std::size_t(k)][up];
      out_k[k0 + k] = fk;
      rest -= fk;
    }
    out_k[k0 + n_mat - 1] = us == 0.0 ? 0.0 : rest;
  };

#pragma omp parallel for schedule(static) num_threads(threads_)
  for (std::int64_t cc = 0; cc < n_cells; ++cc) {
    const int i = int(cc % nx);
    const int j = int(cc / nx);
    const std::int64_t cell = grid_.idx(grid_.gx + i, grid_.gy + j);
    const std::size_t exl = std::size_t(j) * (nx + 1) + i;
    const std::size_t exr = exl + 1;
    const std::size_t eyb = std::size_t(j) * nx + i;
    const std::size_t eyt = eyb + std::size_t(nx);
    const std::int64_t cxl = cell - 1, cxr = cell + 1;
    const std::int64_t cyb = cell - grid_.nxt(), cyt = cell + grid_.nxt();

    constexpr int kMax = 16;
    double fl[kMax], fr[kMax], fb2[kMax], ft[kMax];

    const auto gather = [&](const FluxSet& fs, int slot, double w) {
      double tl[kMax], tr[kMax], tb[kMax], tt[kMax];
      edge_material_flux(fs, slot, true, exl, cxl, cell, 0, tl);
      edge_material_flux(fs, slot, true, exr, cell, cxr, 0, tr);
      if (dim2) {
        edge_material_flux(fs, slot, false, eyb, cyb, cell, 0, tb);
        edge_material_flux(fs, slot, false, eyt, cell, cyt, 0, tt);
      }
      for (int k = 0; k < n_mat; ++k) {
        fl[k] += w * tl[k];
        fr[k] += w * tr[k];
        if (dim2) {
          fb2[k] += w * tb[k];
          ft[k] += w * tt[k];
        }
      }
    };

    for (int k = 0; k < n_mat; ++k) fl[k] = fr[k] = fb2[k] = ft[k] = 0.0;
    if (b != nullptr) {
      gather(a, slot_a, 0.5);
      gather(*b, slot_b, 0.5);
    } else {
      gather(a, slot_a, 1.0);
    }
    for (int k = 0; k < n_mat; ++k) {
      double val = base.partial[std::size_t(k)][cell] - lam_x * (fr[k] - fl[k]);
      if (dim2) val -= lam_y * (ft[k] - fb2[k]);
      out.partial[std::size_t(k)][cell] = val;
    }
  }
}

void LagfluxSolver::accumulate_boundary_outflow(const FluxSet& a, const FluxSet* b, double dt,
                                                std::array<double, 4>& acc) const {
  const int nx = grid_.nx, ny = grid_.ny;
  const double ax = dt * grid_.face_area(Axis::x);
  const auto combined = [&](const std::vector<double>& fa, const std::vector<double>& fb,
                            std::size_t e) { return b != nullptr ? 0.5 * (fa[e] + fb[e]) : fa[e]; };
  for (int c = 0; c < 4; ++c) {
    double s = 0.0;
    for (int j = 0; j < ny; ++j) {
      const std::size_t row = std::size_t(j) * (nx + 1);
      s += combined(a.x[c], b != nullptr ? b->x[c] : a.x[c], row + nx) -
           combined(a.x[c], b != nullptr ? b->x[c] : a.x[c], row);
    }
    acc[c] += ax * s;
  }
  if (grid_.dim == 2) {
    const double ay = dt * grid_.face_area(Axis::y);
    for (int c = 0; c < 4; ++c) {
      double s = 0.0;
      for (int i = 0; i < nx; ++i) {
        s += combined(a.y[c], b != nullptr ? b->y[c] : a.y[c], std::size_t(ny) * nx + i) -
             combined(a.y[c], b != nullptr ? b->y[c] : a.y[c], std::size_t(i));
      }
      acc[c] += ay * s;
    }
  }
}

double LagfluxSolver::compute_dt(const CellField& field, const TimeControls& controls,
                                 double time, double limit_time) const {
  if (grid_.interior_count() <= 0) throw ConfigError("cannot compute a time step on an empty grid");
  const double* rho = field.comp[0].data();
  const double* mx = field.comp[1].data();
  const double* my = field.comp[2].data();
  const double* re = field.comp[3].data();
  const double* gamma_cells = material_set_ != nullptr ? gamma_[0].data() : nullptr;
  const double gamma0 = eos_.gamma;
  const int nx = grid_.nx, ny = grid_.ny;
  const bool dim2 = grid_.dim == 2;
  const std::int64_t n_cells = std::int64_t(nx) * ny;

  FailureRecord fail;
  double rate = 0.0;
#pragma omp parallel for schedule(static) num_threads(threads_) reduction(max : rate)
  for (std::int64_t cc = 0; cc < n_cells; ++cc) {
    const std::int64_t cell = grid_.idx(grid_.gx + int(cc % nx), grid_.gy + int(cc / nx));
    const double r = rho[cell];
    if (!(r > 0.0)) {
      fail.note(cc);
      continue;
    }
    const double inv = 1.0 / r;
    const double u = mx[cell] * inv;
    const double v = my[cell] * inv;
    const double g = gamma_cells != nullptr ? gamma_cells[cell] : gamma0;
    const double p = (g - 1.0) * (re[cell] - 0.5 * (mx[cell] * mx[cell] + my[cell] * my[cell]) * inv);
    if (!(p > 0.0)) {
      fail.note(cc);
      continue;
    }
    const double c = std::sqrt(g * p * inv);
    double rr = (std::abs(u) + c) / grid_.dx;
    if (dim2) rr += (std::abs(v) + c) / grid_.dy;
    rate = std::max(rate, rr);
  }
  if (fail.failed()) {
    const std::int64_t cc = fail.where.load();
    throw InvalidStateError("non-physical state while computing the time step at cell (" +
                            std::to_string(cc % nx) + "," + std::to_string(cc / nx) + ")");
  }
  double dt = controls.cfl / rate;
  if (time + dt > limit_time) dt = limit_time - time;
  if (!(dt > 0.0)) throw Error("non-positive time step (time limit already reached?)");
  return dt;
}

void LagfluxSolver::euler_stage(CellField& in, double dt, CellField& out, std::int64_t step) {
  fill_all_ghosts(in, nullptr, 0);
  build_primitives(in, 0, step);
  compute_fluxes(flux1_, 0, step);
  apply_update(in, flux1_, nullptr, dt, out, step, nullptr, nullptr);
}

double LagfluxSolver::heun_step(SolverState& state, const TimeControls& controls,
                                double limit_time, MaterialCells* mat) {
  if (material_set_ == nullptr) mat = nullptr;
  fill_all_ghosts(state.field, mat, 0);
  const double dt = compute_dt(state.field, controls, state.time, limit_time);
  const bool hits_limit = state.time + dt >= limit_time;

  build_primitives(state.field, 0, state.step);
  compute_fluxes(flux1_, 0, state.step);

  double min_rho = 0.0, min_eint = 0.0;
  apply_update(state.field, flux1_, nullptr, dt, predictor_, state.step, &min_rho, &min_eint);
  if (mat != nullptr) update_partials(*mat, flux1_, nullptr, dt, 0, -1, predictor_mat_);

  if (params_.time_order >= 2) {
    fill_all_ghosts(predictor_, mat != nullptr ? &predictor_mat_ : nullptr, 1);
    build_primitives(predictor_, 1, state.step);
    compute_fluxes(flux2_, 1, state.step);
    apply_update(state.field, flux1_, &flux2_, dt, state.field, state.step, &min_rho, &min_eint);
    if (mat != nullptr) update_partials(*mat, flux1_, &flux2_, dt, 0, 1, *mat);
    accumulate_boundary_outflow(flux1_, &flux2_, dt, state.boundary_outflow);
  } else {
    std::swap(state.field.comp, predictor_.comp);
    if (mat != nullptr) std::swap(mat->partial, predictor_mat_.partial);
    accumulate_boundary_outflow(flux1_, nullptr, dt, state.boundary_outflow);
  }

  double min_p;
  if (material_set_ == nullptr) {
    min_p = (eos_.gamma - 1.0) * min_eint;
  } else {
    // effective gamma varies per cell; recompute the pressure minimum from
    // the fresh partial masses
    min_p = std::numeric_limits<double>::infinity();
    const int nx = grid_.nx, ny = grid_.ny;
    const int n_mat = material_set_->count();
#pragma omp parallel for schedule(static) num_threads(threads_) reduction(min : min_p)
    for (std::int64_t cc = 0; cc < std::int64_t(nx) * ny; ++cc) {
      const std::int64_t cell = grid_.idx(grid_.gx + int(cc % nx), grid_.gy + int(cc / nx));
      const double r = state.field.comp[0][cell];
      double s = 0.0;
      for (int k = 0; k < n_mat; ++k)
        s += (mat->partial[std::size_t(k)][cell] / r) /
             (material_set_->gammas[std::size_t(k)] - 1.0);
      const double eint = state.field.comp[3][cell] -
                          0.5 *
                              (state.field.comp[1][cell] * state.field.comp[1][cell] +
                               state.field.comp[2][cell] * state.field.comp[2][cell]) /
                              r;
      min_p = std::min(min_p, eint / s);
    }
  }

  state.time = hits_limit ? limit_time : state.time + dt;
  state.step += 1;
  state.diagnostics.push_back({state.step, state.time, dt, min_rho, min_p});
  return dt;
}

} // namespace lagflux
