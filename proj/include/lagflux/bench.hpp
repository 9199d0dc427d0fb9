#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lagflux/config.hpp"

namespace lagflux {

struct BenchReport {
  double mcups = 0.0; // cells * steps / wall_seconds / 1e6
  int threads = 1;
  std::string vector_note;
  std::int64_t cells = 0;
  std::int64_t steps = 0;
  double wall_seconds = 0.0;
  double speedup = 0.0; // baseline_time / this_time
  std::uint64_t state_digest = 0;
};

// Run `warmup_steps` untimed steps, then time `measured_steps` with a
// monotonic clock. After timing, the same step count is replayed on one
// thread and the final states are compared bit for bit; a mismatch throws
// DeterminismError. The serial replay also provides the speedup baseline.
BenchReport measure_mcups(const CaseConfig& config, int threads, int warmup_steps,
                          int measured_steps);

// One report per thread count against a shared one-thread baseline.
std::vector<BenchReport> scaling_sweep(const CaseConfig& config,
                                       const std::vector<int>& thread_list, int warmup_steps,
                                       int measured_steps);

// CSV: threads,mcups,speedup
void write_scaling_csv(std::ostream& out, const std::vector<BenchReport>& reports);

// Human-readable table. Flags non-monotonic speedups and low parallel
// efficiency as soft warnings, never as failures.
void print_report_table(std::ostream& out, const std::vector<BenchReport>& reports);

// FNV-1a over raw bytes; used for bitwise state comparison.
std::uint64_t bytes_digest(const void* data, std::size_t bytes, std::uint64_t seed);

} // namespace lagflux
