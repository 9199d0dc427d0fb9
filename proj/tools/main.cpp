#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lagflux/bench.hpp"
#include "lagflux/csv.hpp"
#include "lagflux/exact_riemann.hpp"
#include "lagflux/run.hpp"
#include "lagflux/study.hpp"

namespace {

using namespace lagflux;

std::vector<int> parse_int_list(const std::string& s, const char* what) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ConfigError(std::string("bad ") + what + " list: " + s);
    }
  }
  if (out.empty()) throw ConfigError(std::string("empty ") + what + " list");
  return out;
}

PrimitiveState parse_state(const std::string& s) {
  std::vector<double> v;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) v.push_back(std::stod(item));
  if (v.size() == 3) return {v[0], v[1], 0.0, v[2]};
  if (v.size() == 4) return {v[0], v[1], v[2], v[3]};
  throw ConfigError("state must be rho,u,p or rho,u,v,p: " + s);
}

int cmd_run(const std::string& case_arg, int threads, double dump_every,
            const std::string& prefix) {
  CaseConfig config = parse_case(case_arg);
  if (threads > 0) config.threads = threads;
  if (!prefix.empty()) config.output_prefix = prefix;
  if (dump_every > 0.0) {
    for (double t = dump_every; t < config.t_final; t += dump_every)
      config.dump_times.push_back(t);
    std::sort(config.dump_times.begin(), config.dump_times.end());
  }
  const RunSummary summary = run_case(config);
  std::cerr << "case " << config.name << ": " << summary.steps << " steps to t = "
            << summary.final_time << ", min rho " << summary.min_rho << ", min p "
            << summary.min_p << "\n";
  if (summary.truncated_by_max_steps)
    std::cerr << "note: stopped by max_steps before reaching t_final\n";
  for (const std::string& p : summary.dump_paths) std::cerr << "wrote " << p << "\n";
  if (!summary.diagnostics_path.empty())
    std::cerr << "wrote " << summary.diagnostics_path << "\n";
  return 0;
}

int cmd_convergence(const std::string& case_arg, const std::string& meshes) {
  const CaseConfig config = parse_case(case_arg);
  const std::vector<int> mesh_list = parse_int_list(meshes, "mesh");
  const auto rows = oracle::convergence_study(config, mesh_list);
  oracle::write_convergence_csv(std::cout, rows);
  return 0;
}

int cmd_bench(const std::string& case_arg, const std::string& threads, int steps, int warmup) {
  const CaseConfig config = parse_case(case_arg);
  const std::vector<int> thread_list = parse_int_list(threads, "thread");
  const auto reports = scaling_sweep(config, thread_list, warmup, steps);
  print_report_table(std::cerr, reports);
  write_scaling_csv(std::cout, reports);
  return 0;
}

int cmd_riemann_exact(const std::string& left, const std::string& right, double gamma,
                      double time, int samples, double x_split, double x_min, double x_max) {
  if (samples < 2) throw ConfigError("need at least 2 samples");
  if (!(time > 0.0)) throw ConfigError("time must be positive");
  const PrimitiveState wl = parse_state(left);
  const PrimitiveState wr = parse_state(right);
  const auto sol = oracle::exact_riemann(wl, wr, make_eos(gamma));
  std::cout << "x,rho,u,p,e_internal\n";
  for (int i = 0; i < samples; ++i) {
    const double x = x_min + (x_max - x_min) * (i + 0.5) / samples;
    const PrimitiveState w = oracle::sample_exact(sol, (x - x_split) / time);
    const double e = w.rho > 0.0 ? w.p / ((gamma - 1.0) * w.rho) : 0.0;
    std::cout << format_g17(x) << ',' << format_g17(w.rho) << ',' << format_g17(w.u) << ','
              << format_g17(w.p) << ',' << format_g17(e) << '\n';
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume Euler solver with a Lagrangian-Riemann edge flux"};
  app.require_subcommand(1);

  std::string case_arg, prefix, meshes = "100,400", threads_list = "1";
  std::string left, right;
  int threads = 0, steps = 100, warmup = 5, samples = 200;
  double dump_every = 0.0, gamma = 1.4, time = 0.2, x_split = 0.5, x_min = 0.0, x_max = 1.0;

  CLI::App* run = app.add_subcommand("run", "advance a case and write CSV dumps");
  run->add_option("--case", case_arg, "case file or preset name")->required();
  run->add_option("--threads", threads, "worker count override");
  run->add_option("--dump-every", dump_every, "extra dump interval");
  run->add_option("--prefix", prefix, "output prefix override");

  CLI::App* conv = app.add_subcommand("convergence", "L1 errors against the exact solution");
  conv->add_option("--case", case_arg, "1D Riemann case file or preset")->required();
  conv->add_option("--meshes", meshes, "comma-separated mesh sizes");

  CLI::App* bench = app.add_subcommand("bench", "throughput and scaling measurement");
  bench->add_option("--case", case_arg, "case file or preset name")->required();
  bench->add_option("--threads", threads_list, "comma-separated thread counts");
  bench->add_option("--steps", steps, "measured steps per run");
  bench->add_option("--warmup", warmup, "untimed warmup steps");

  CLI::App* rx = app.add_subcommand("riemann-exact", "sample the exact Riemann solution");
  rx->add_option("--left", left, "left state rho,u,p")->required();
  rx->add_option("--right", right, "right state rho,u,p")->required();
  rx->add_option("--gamma", gamma, "adiabatic index");
  rx->add_option("--time", time, "evaluation time")->required();
  rx->add_option("--samples", samples, "sample count");
  rx->add_option("--x-split", x_split, "initial discontinuity position");
  rx->add_option("--x-min", x_min, "sampling window start");
  rx->add_option("--x-max", x_max, "sampling window end");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return cmd_run(case_arg, threads, dump_every, prefix);
    if (conv->parsed()) return cmd_convergence(case_arg, meshes);
    if (bench->parsed()) return cmd_bench(case_arg, threads_list, steps, warmup);
    if (rx->parsed())
      return cmd_riemann_exact(left, right, gamma, time, samples, x_split, x_min, x_max);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
