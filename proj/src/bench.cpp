#include "lagflux/bench.hpp"

#include <chrono>
#include <cstdio>
#include <limits>
#include <ostream>

#include "lagflux/run.hpp"

namespace lagflux {

std::uint64_t bytes_digest(const void* data, std::size_t bytes, std::uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed == 0 ? 1469598103934665603ull : seed;
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

const char* vector_note() {
#if defined(__AVX512F__)
  return "compiled with AVX-512";
#elif defined(__AVX2__)
  return "compiled with AVX2";
#elif defined(__AVX__)
  return "compiled with AVX";
#elif defined(__SSE2__) || defined(__x86_64__)
  return "compiled with SSE2";
#elif defined(__ARM_NEON)
  return "compiled with NEON";
#else
  return "no SIMD extension detected at compile time";
#endif
}

struct TimedRun {
  double wall_seconds = 0.0;
  std::uint64_t digest = 0;
};

std::uint64_t field_digest(const CellField& field) {
  std::uint64_t h = 0;
  for (const auto& comp : field.comp)
    h = bytes_digest(comp.data(), comp.size() * sizeof(double), h);
  return h;
}

TimedRun run_steps(const CaseConfig& config, int threads, int warmup_steps,
                   int measured_steps) {
  CaseConfig c = config;
  c.threads = threads;
  // step-count driven: push the end time out of reach
  c.t_final = std::numeric_limits<double>::max();
  c.max_steps = std::int64_t(warmup_steps) + measured_steps;

  const CartesianGrid g = build_grid(c);
  SolverState state;
  state.field = CellField(g);
  initialize_hydro(c, g, state.field, nullptr);

  const PerfectGasEos eos{c.gamma};
  const SchemeParams params{make_limiter(c.beta), c.spatial_order, c.time_order};
  const TimeControls controls{c.cfl, c.t_final, c.max_steps};
  LagfluxSolver solver(g, c.boundary(), eos, params, threads);

  for (int s = 0; s < warmup_steps; ++s)
    solver.heun_step(state, controls, c.t_final, nullptr);

  const auto start = std::chrono::steady_clock::now();
  for (int s = 0; s < measured_steps; ++s)
    solver.heun_step(state, controls, c.t_final, nullptr);
  const auto stop = std::chrono::steady_clock::now();

  TimedRun r;
  r.wall_seconds = std::chrono::duration<double>(stop - start).count();
  r.digest = field_digest(state.field);
  return r;
}

} // namespace

BenchReport measure_mcups(const CaseConfig& config, int threads, int warmup_steps,
                          int measured_steps) {
  if (config.solver != SolverKind::lagflux)
    throw ConfigError("the benchmark harness drives the lagflux solver");
  if (measured_steps < 1) throw ConfigError("measured_steps must be >= 1");
  if (!config.material_gammas.empty())
    throw ConfigError("benchmark cases are single-material");

  const TimedRun timed = run_steps(config, threads, warmup_steps, measured_steps);
  // Replay on one thread: the determinism check, and the speedup baseline.
  const TimedRun serial = run_steps(config, 1, warmup_steps, measured_steps);
  if (serial.digest != timed.digest)
    throw DeterminismError("threaded and serial runs produced different states (" +
                           std::to_string(threads) + " threads)");

  BenchReport r;
  r.threads = threads;
  r.vector_note = vector_note();
  r.cells = std::int64_t(config.nx) * config.ny;
  r.steps = measured_steps;
  r.wall_seconds = timed.wall_seconds;
  r.mcups = double(r.cells) * double(r.steps) / r.wall_seconds / 1e6;
  r.speedup = serial.wall_seconds / timed.wall_seconds;
  r.state_digest = timed.digest;
  return r;
}

std::vector<BenchReport> scaling_sweep(const CaseConfig& config,
                                       const std::vector<int>& thread_list, int warmup_steps,
                                       int measured_steps) {
  if (thread_list.empty()) throw ConfigError("thread list is empty");
  std::vector<BenchReport> reports;
  double baseline_seconds = -1.0;
  std::uint64_t baseline_digest = 0;
  for (int t : thread_list) {
    BenchReport r = measure_mcups(config, t, warmup_steps, measured_steps);
    if (baseline_seconds < 0.0) {
      // shared baseline: the first run itself when it is the one-thread run,
      // its serial replay otherwise
      baseline_seconds = t == 1 ? r.wall_seconds : r.wall_seconds * r.speedup;
      baseline_digest = r.state_digest;
    }
    if (r.state_digest != baseline_digest)
      throw DeterminismError("thread counts disagreed on the final state");
    r.speedup = baseline_seconds / r.wall_seconds;
    reports.push_back(r);
  }
  return reports;
}

void write_scaling_csv(std::ostream& out, const std::vector<BenchReport>& reports) {
  out << "threads,mcups,speedup\n";
  for (const BenchReport& r : reports)
    out << r.threads << ',' << r.mcups << ',' << r.speedup << '\n';
}

void print_report_table(std::ostream& out, const std::vector<BenchReport>& reports) {
  out << "# throughput in millions of cell updates per second (MCUPs)\n";
  out << "# reference context: 81.0 MCUPs / 31.1x scaling previously measured on a 16-core\n";
  out << "# AVX-class server for this scheme family; hardware-specific, reported only\n";
  if (!reports.empty())
    out << "# " << reports.front().vector_note << ", " << reports.front().cells << " cells, "
        << reports.front().steps << " measured steps\n";
  out << "threads      MCUPs    speedup\n";
  double prev = 0.0;
  for (const BenchReport& r : reports) {
    char line[96];
    std::snprintf(line, sizeof line, "%7d %10.2f %10.2f", r.threads, r.mcups, r.speedup);
    out << line;
    if (r.speedup < prev) out << "   (non-monotonic)";
    if (r.threads >= 4 && r.speedup < 1.5) out << "   (low parallel efficiency)";
    out << '\n';
    prev = r.speedup;
  }
}

} // namespace lagflux
