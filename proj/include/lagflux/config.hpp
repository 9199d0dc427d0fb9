#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lagflux/grid.hpp"

namespace lagflux {

enum class SolverKind { lagflux, lagremap1d, advect2d };
enum class InitKind { riemann_x, density_wave, regions, disk };

const char* to_string(SolverKind k);
const char* to_string(InitKind k);
const char* to_string(BcKind k);

// Axis-aligned box with a constant state and a material tag (1-based).
struct RegionSpec {
  double x_min = 0.0, x_max = 0.0;
  double y_min = 0.0, y_max = 0.0;
  double rho = 1.0, u = 0.0, v = 0.0, p = 1.0;
  int material = 1;

  bool operator==(const RegionSpec&) const = default;
};

// Everything needed to reproduce one experiment. Parsed from the structured
// key/value case format (see README for the grammar); presets are shipped
// case files under cases/.
struct CaseConfig {
  std::string name; // stem of the file it was parsed from

  SolverKind solver = SolverKind::lagflux;
  int dimensions = 1;

  // [mesh]
  int nx = 100;
  int ny = 1;
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;

  // [eos] (single material) or [materials]
  double gamma = 1.4;
  std::vector<double> material_gammas; // empty means single material

  // [scheme]
  double beta = 1.5;
  int spatial_order = 2;
  int time_order = 2;
  int remap_order = 1; // lagremap1d convection edge states: 1 upwind, 2 MUSCL

  // [time]
  double cfl = 0.25;
  double t_final = 0.0;
  std::int64_t max_steps = 100000000;

  // [boundary]
  BcKind bc_x_low = BcKind::transmissive;
  BcKind bc_x_high = BcKind::transmissive;
  BcKind bc_y_low = BcKind::transmissive;
  BcKind bc_y_high = BcKind::transmissive;

  // [init]
  InitKind init = InitKind::riemann_x;
  // riemann_x
  double x_split = 0.5;
  PrimitiveState left{1.0, 0.0, 0.0, 1.0};
  PrimitiveState right{1.0, 0.0, 0.0, 1.0};
  // density_wave: rho = mean + amplitude sin(2 pi (kx x + ky y)), u,v,p constant
  double wave_mean = 1.0;
  double wave_amplitude = 0.2;
  double wave_u = 1.0, wave_v = 0.0;
  double wave_p = 1.0;
  int wave_kx = 1, wave_ky = 0;
  // disk (scalar advection)
  double disk_cx = 0.5, disk_cy = 0.75, disk_radius = 0.15;
  // regions
  std::vector<RegionSpec> regions;

  // [advect]
  double advect_period = 12.0; // velocity reversal period

  // [output]
  std::string output_prefix;
  std::vector<double> dump_times;

  // [run]
  int threads = 1;

  bool operator==(const CaseConfig&) const = default;

  int material_count() const {
    return material_gammas.empty() ? 1 : int(material_gammas.size());
  }
  double gamma_of(int k) const {
    return material_gammas.empty() ? gamma : material_gammas[std::size_t(k)];
  }
  BoundaryCondition boundary() const { return {bc_x_low, bc_x_high, bc_y_low, bc_y_high}; }
};

// Parse a case file. `path_or_name` may be a file path or a bare preset name;
// bare names resolve to <name>.case in the current directory, then in
// $LAGFLUX_CASE_DIR. Throws ConfigError with line context on any problem.
CaseConfig parse_case(const std::string& path_or_name);

// Parse from an in-memory buffer (`name` is used for messages and defaults).
CaseConfig parse_case_text(const std::string& text, const std::string& name);

// Canonical text form; parse_case_text(serialize_case(c)) == c.
std::string serialize_case(const CaseConfig& c);

// FNV-1a over the canonical form; stamped into dump headers for provenance.
std::uint64_t config_digest(const CaseConfig& c);

std::string resolve_case_path(const std::string& path_or_name);

} // namespace lagflux
