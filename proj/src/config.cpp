#include "lagflux/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "lagflux/multimat.hpp"
#include "lagflux/reconstruct.hpp"

namespace lagflux {

const char* to_string(SolverKind k) {
  switch (k) {
  case SolverKind::lagflux: return "lagflux";
  case SolverKind::lagremap1d: return "lagremap1d";
  case SolverKind::advect2d: return "advect2d";
  }
  return "?";
}

const char* to_string(InitKind k) {
  switch (k) {
  case InitKind::riemann_x: return "riemann_x";
  case InitKind::density_wave: return "density_wave";
  case InitKind::regions: return "regions";
  case InitKind::disk: return "disk";
  }
  return "?";
}

const char* to_string(BcKind k) {
  switch (k) {
  case BcKind::transmissive: return "transmissive";
  case BcKind::reflective: return "reflective";
  case BcKind::periodic: return "periodic";
  }
  return "?";
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
  mutable bool used = false;
};

struct Section {
  int line = 0;
  std::map<std::string, Entry> entries;
};

struct RawCase {
  std::string name;
  std::map<std::string, Section> sections; // "" is the top level
};

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const RawCase& raw, int line, const std::string& msg) {
  throw ConfigError(raw.name + ":" + std::to_string(line) + ": " + msg);
}

RawCase tokenize(const std::string& text, const std::string& name) {
  RawCase raw;
  raw.name = name;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(raw, lineno, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) fail(raw, lineno, "empty section name");
      if (raw.sections.count(section) != 0) fail(raw, lineno, "duplicate section [" + section + "]");
      raw.sections[section].line = lineno;
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(raw, lineno, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(raw, lineno, "empty key");
    if (value.empty()) fail(raw, lineno, "empty value for key '" + key + "'");
    auto& sec = raw.sections[section];
    if (sec.entries.count(key) != 0) fail(raw, lineno, "duplicate key '" + key + "'");
    sec.entries[key] = Entry{value, lineno, false};
  }
  return raw;
}

// Typed access into one section, tracking which keys were consumed.
class Reader {
public:
  Reader(const RawCase& raw, const std::string& section) : raw_(raw), section_(section) {
    auto it = raw.sections.find(section);
    sec_ = it == raw.sections.end() ? nullptr : &it->second;
  }

  bool present() const { return sec_ != nullptr; }

  const Entry* find(const std::string& key) const {
    if (sec_ == nullptr) return nullptr;
    auto it = sec_->entries.find(key);
    if (it == sec_->entries.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  const Entry& require(const std::string& key) const {
    const Entry* e = find(key);
    if (e == nullptr)
      throw ConfigError(raw_.name + ": missing required key '" + key + "' in " + where());
    return *e;
  }

  double number(const std::string& key) const { return to_number(require(key)); }
  double number(const std::string& key, double fallback) const {
    const Entry* e = find(key);
    return e == nullptr ? fallback : to_number(*e);
  }
  std::int64_t integer(const std::string& key, std::int64_t fallback) const {
    const Entry* e = find(key);
    if (e == nullptr) return fallback;
    const double v = to_number(*e);
    const auto iv = std::int64_t(v);
    if (double(iv) != v) fail(raw_, e->line, "expected an integer for '" + key + "'");
    return iv;
  }
  std::int64_t integer(const std::string& key) const {
    const Entry& e = require(key);
    const double v = to_number(e);
    const auto iv = std::int64_t(v);
    if (double(iv) != v) fail(raw_, e.line, "expected an integer for '" + key + "'");
    return iv;
  }
  std::string word(const std::string& key, const std::string& fallback) const {
    const Entry* e = find(key);
    return e == nullptr ? fallback : e->value;
  }
  std::vector<double> list(const std::string& key) const { return to_list(require(key)); }
  std::vector<double> list(const std::string& key, std::vector<double> fallback) const {
    const Entry* e = find(key);
    return e == nullptr ? std::move(fallback) : to_list(*e);
  }

  void finish() const {
    if (sec_ == nullptr) return;
    for (const auto& [key, entry] : sec_->entries)
      if (!entry.used) fail(raw_, entry.line, "unknown key '" + key + "' in " + where());
  }

private:
  std::string where() const { return section_.empty() ? "the top level" : "[" + section_ + "]"; }

  double to_number(const Entry& e) const {
    char* end = nullptr;
    const double v = std::strtod(e.value.c_str(), &end);
    if (end == e.value.c_str() || *end != '\0')
      fail(raw_, e.line, "expected a number, got '" + e.value + "'");
    return v;
  }

  std::vector<double> to_list(const Entry& e) const {
    std::vector<double> out;
    std::string item;
    std::istringstream in(e.value);
    while (std::getline(in, item, ',')) {
      item = trim(item);
      if (item.empty()) fail(raw_, e.line, "empty item in list");
      char* end = nullptr;
      const double v = std::strtod(item.c_str(), &end);
      if (end == item.c_str() || *end != '\0')
        fail(raw_, e.line, "expected a number in list, got '" + item + "'");
      out.push_back(v);
    }
    if (out.empty()) fail(raw_, e.line, "empty list");
    return out;
  }

  const RawCase& raw_;
  std::string section_;
  const Section* sec_;
};

BcKind bc_from_word(const RawCase& raw, const Reader& r, const std::string& key,
                    BcKind fallback) {
  const Entry* e = r.find(key);
  if (e == nullptr) return fallback;
  if (e->value == "transmissive") return BcKind::transmissive;
  if (e->value == "reflective") return BcKind::reflective;
  if (e->value == "periodic") return BcKind::periodic;
  fail(raw, e->line, "unknown boundary kind '" + e->value + "'");
}

PrimitiveState state_from_list(const RawCase& raw, const Entry& e,
                               const std::vector<double>& v) {
  if (v.size() == 3) return {v[0], v[1], 0.0, v[2]}; // rho, u, p
  if (v.size() == 4) return {v[0], v[1], v[2], v[3]}; // rho, u, v, p
  fail(raw, e.line, "state list must be 'rho, u, p' or 'rho, u, v, p'");
}

} // namespace

CaseConfig parse_case_text(const std::string& text, const std::string& name) {
  const RawCase raw = tokenize(text, name);
  CaseConfig c;
  c.name = name;

  const std::set<std::string> known_fixed = {"",     "mesh",     "eos",    "materials",
                                             "scheme", "time",   "boundary", "init",
                                             "advect", "output", "run"};
  for (const auto& [sec, body] : raw.sections) {
    if (known_fixed.count(sec) != 0) continue;
    if (sec.rfind("region ", 0) == 0) continue;
    fail(raw, body.line, "unknown section [" + sec + "]");
  }

  Reader top(raw, "");
  {
    const std::string s = top.word("solver", "lagflux");
    if (s == "lagflux") c.solver = SolverKind::lagflux;
    else if (s == "lagremap1d") c.solver = SolverKind::lagremap1d;
    else if (s == "advect2d") c.solver = SolverKind::advect2d;
    else throw ConfigError(name + ": unknown solver '" + s + "'");
  }
  c.dimensions = int(top.integer("dimensions", 1));
  if (c.dimensions != 1 && c.dimensions != 2)
    throw ConfigError(name + ": dimensions must be 1 or 2");
  top.finish();

  Reader mesh(raw, "mesh");
  c.nx = int(mesh.integer("nx"));
  c.ny = int(mesh.integer("ny", 1));
  c.x_min = mesh.number("x_min", 0.0);
  c.x_max = mesh.number("x_max", 1.0);
  c.y_min = mesh.number("y_min", 0.0);
  c.y_max = mesh.number("y_max", 1.0);
  mesh.finish();
  if (c.nx < 1) throw ConfigError(name + ": nx must be >= 1");
  if (c.ny < 1) throw ConfigError(name + ": ny must be >= 1");
  if (c.dimensions == 1 && c.ny != 1) throw ConfigError(name + ": 1D cases must have ny = 1");
  if (!(c.x_max > c.x_min)) throw ConfigError(name + ": x extent must be positive");
  if (c.dimensions == 2 && !(c.y_max > c.y_min))
    throw ConfigError(name + ": y extent must be positive");

  Reader eos(raw, "eos");
  Reader materials(raw, "materials");
  if (materials.present()) {
    if (eos.present()) throw ConfigError(name + ": give either [eos] or [materials], not both");
    c.material_gammas = materials.list("gammas");
    make_material_set(c.material_gammas); // range checks
    c.gamma = c.material_gammas.front();
  } else {
    c.gamma = eos.number("gamma", 1.4);
    make_eos(c.gamma);
  }
  eos.finish();
  materials.finish();

  Reader scheme(raw, "scheme");
  c.beta = scheme.number("beta", 1.5);
  make_limiter(c.beta);
  c.spatial_order = int(scheme.integer("spatial_order", 2));
  c.time_order = int(scheme.integer("time_order", 2));
  c.remap_order = int(scheme.integer("remap_order", 1));
  for (int v : {c.spatial_order, c.time_order, c.remap_order})
    if (v != 1 && v != 2) throw ConfigError(name + ": scheme orders must be 1 or 2");
  scheme.finish();

  Reader time(raw, "time");
  c.cfl = time.number("cfl", 0.25);
  if (!(c.cfl > 0.0) || !(c.cfl < 1.0)) throw ConfigError(name + ": cfl must lie in (0, 1)");
  c.t_final = time.number("t_final");
  if (c.t_final < 0.0) throw ConfigError(name + ": t_final must be >= 0");
  c.max_steps = time.integer("max_steps", c.max_steps);
  if (c.max_steps < 0) throw ConfigError(name + ": max_steps must be >= 0");
  time.finish();

  Reader boundary(raw, "boundary");
  c.bc_x_low = bc_from_word(raw, boundary, "x_low", BcKind::transmissive);
  c.bc_x_high = bc_from_word(raw, boundary, "x_high", BcKind::transmissive);
  c.bc_y_low = bc_from_word(raw, boundary, "y_low", BcKind::transmissive);
  c.bc_y_high = bc_from_word(raw, boundary, "y_high", BcKind::transmissive);
  boundary.finish();
  validate_boundary(c.boundary(), c.dimensions);

  Reader init(raw, "init");
  {
    const std::string kind = init.word("kind", "riemann_x");
    if (kind == "riemann_x") {
      c.init = InitKind::riemann_x;
      c.x_split = init.number("x_split", 0.5);
      c.left = state_from_list(raw, init.require("left"), init.list("left"));
      c.right = state_from_list(raw, init.require("right"), init.list("right"));
      if (!(c.left.rho > 0.0) || !(c.left.p > 0.0) || !(c.right.rho > 0.0) ||
          !(c.right.p > 0.0))
        throw ConfigError(name + ": Riemann states must have positive rho and p");
    } else if (kind == "density_wave") {
      c.init = InitKind::density_wave;
      c.wave_mean = init.number("mean", 1.0);
      c.wave_amplitude = init.number("amplitude", 0.2);
      const std::vector<double> vel = init.list("velocity", {1.0});
      c.wave_u = vel[0];
      c.wave_v = vel.size() > 1 ? vel[1] : 0.0;
      c.wave_p = init.number("pressure", 1.0);
      const std::vector<double> wv = init.list("wave", {1.0, 0.0});
      c.wave_kx = int(wv[0]);
      c.wave_ky = wv.size() > 1 ? int(wv[1]) : 0;
      if (!(c.wave_mean - std::abs(c.wave_amplitude) > 0.0))
        throw ConfigError(name + ": density wave must keep rho positive");
    } else if (kind == "regions") {
      c.init = InitKind::regions;
    } else if (kind == "disk") {
      c.init = InitKind::disk;
      const std::vector<double> ctr = init.list("center", {0.5, 0.75});
      if (ctr.size() != 2) throw ConfigError(name + ": disk center needs two coordinates");
      c.disk_cx = ctr[0];
      c.disk_cy = ctr[1];
      c.disk_radius = init.number("radius", 0.15);
      if (!(c.disk_radius > 0.0)) throw ConfigError(name + ": disk radius must be positive");
    } else {
      throw ConfigError(name + ": unknown init kind '" + kind + "'");
    }
  }
  init.finish();

  std::vector<std::pair<long, std::string>> region_sections;
  for (const auto& [sec, body] : raw.sections) {
    if (sec.rfind("region ", 0) != 0) continue;
    char* end = nullptr;
    const long num = std::strtol(sec.c_str() + 7, &end, 10);
    if (end == sec.c_str() + 7 || *end != '\0')
      fail(raw, body.line, "region sections are named [region N] with integer N");
    region_sections.emplace_back(num, sec);
  }
  std::sort(region_sections.begin(), region_sections.end());
  for (const auto& [num, sec] : region_sections) {
    Reader region(raw, sec);
    RegionSpec rs;
    rs.x_min = region.number("x_min");
    rs.x_max = region.number("x_max");
    rs.y_min = region.number("y_min", 0.0);
    rs.y_max = region.number("y_max", 1.0);
    rs.rho = region.number("rho");
    rs.u = region.number("u", 0.0);
    rs.v = region.number("v", 0.0);
    rs.p = region.number("p");
    rs.material = int(region.integer("material", 1));
    region.finish();
    const int sec_line = raw.sections.at(sec).line;
    if (!(rs.rho > 0.0) || !(rs.p > 0.0))
      fail(raw, sec_line, "region state must have positive rho and p");
    if (rs.material < 1 || rs.material > c.material_count())
      fail(raw, sec_line, "region material index out of range");
    c.regions.push_back(rs);
  }
  if (c.init == InitKind::regions && c.regions.empty())
    throw ConfigError(name + ": init kind 'regions' needs at least one [region N] section");
  if (c.init != InitKind::regions && !c.regions.empty())
    throw ConfigError(name + ": [region N] sections require init kind 'regions'");

  Reader advect(raw, "advect");
  c.advect_period = advect.number("period", 12.0);
  if (!(c.advect_period > 0.0)) throw ConfigError(name + ": advect period must be positive");
  advect.finish();

  Reader output(raw, "output");
  c.output_prefix = output.word("prefix", name);
  c.dump_times = output.list("dump_times", {});
  std::sort(c.dump_times.begin(), c.dump_times.end());
  for (double t : c.dump_times)
    if (t < 0.0 || t > c.t_final)
      throw ConfigError(name + ": dump times must lie in [0, t_final]");
  output.finish();

  Reader run(raw, "run");
  c.threads = int(run.integer("threads", 1));
  if (c.threads < 1) throw ConfigError(name + ": threads must be >= 1");
  run.finish();

  // solver-specific constraints
  if (c.solver == SolverKind::lagremap1d && c.dimensions != 1)
    throw ConfigError(name + ": lagremap1d is a 1D solver");
  if (c.solver == SolverKind::advect2d) {
    if (c.dimensions != 2) throw ConfigError(name + ": advect2d needs dimensions = 2");
    if (c.init != InitKind::disk) throw ConfigError(name + ": advect2d expects init kind 'disk'");
  }
  if (c.solver != SolverKind::advect2d && c.init == InitKind::disk)
    throw ConfigError(name + ": init kind 'disk' is for the advect2d solver");
  if (!c.material_gammas.empty() && c.init != InitKind::regions)
    throw ConfigError(name + ": multimaterial cases must use init kind 'regions'");

  return c;
}

std::string resolve_case_path(const std::string& path_or_name) {
  namespace fs = std::filesystem;
  if (fs::exists(path_or_name)) return path_or_name;
  const std::string with_ext = path_or_name + ".case";
  if (fs::exists(with_ext)) return with_ext;
  if (const char* dir = std::getenv("LAGFLUX_CASE_DIR")) {
    for (const std::string& candidate :
         {std::string(dir) + "/" + path_or_name, std::string(dir) + "/" + with_ext}) {
      if (fs::exists(candidate)) return candidate;
    }
  }
  throw ConfigError("case file not found: " + path_or_name);
}

CaseConfig parse_case(const std::string& path_or_name) {
  const std::string path = resolve_case_path(path_or_name);
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open case file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_case_text(buf.str(), std::filesystem::path(path).stem().string());
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != 0) s += ", ";
    s += fmt(v[i]);
  }
  return s;
}

} // namespace

std::string serialize_case(const CaseConfig& c) {
  std::ostringstream o;
  o << "solver = " << to_string(c.solver) << "\n";
  o << "dimensions = " << c.dimensions << "\n";
  o << "\n[mesh]\n";
  o << "nx = " << c.nx << "\nny = " << c.ny << "\n";
  o << "x_min = " << fmt(c.x_min) << "\nx_max = " << fmt(c.x_max) << "\n";
  o << "y_min = " << fmt(c.y_min) << "\ny_max = " << fmt(c.y_max) << "\n";
  if (c.material_gammas.empty()) {
    o << "\n[eos]\ngamma = " << fmt(c.gamma) << "\n";
  } else {
    o << "\n[materials]\ngammas = " << fmt_list(c.material_gammas) << "\n";
  }
  o << "\n[scheme]\n";
  o << "beta = " << fmt(c.beta) << "\n";
  o << "spatial_order = " << c.spatial_order << "\ntime_order = " << c.time_order << "\n";
  o << "remap_order = " << c.remap_order << "\n";
  o << "\n[time]\n";
  o << "cfl = " << fmt(c.cfl) << "\nt_final = " << fmt(c.t_final) << "\n";
  o << "max_steps = " << c.max_steps << "\n";
  o << "\n[boundary]\n";
  o << "x_low = " << to_string(c.bc_x_low) << "\nx_high = " << to_string(c.bc_x_high) << "\n";
  o << "y_low = " << to_string(c.bc_y_low) << "\ny_high = " << to_string(c.bc_y_high) << "\n";
  o << "\n[init]\n";
  o << "kind = " << to_string(c.init) << "\n";
  switch (c.init) {
  case InitKind::riemann_x:
    o << "x_split = " << fmt(c.x_split) << "\n";
    o << "left = " << fmt(c.left.rho) << ", " << fmt(c.left.u) << ", " << fmt(c.left.v) << ", "
      << fmt(c.left.p) << "\n";
    o << "right = " << fmt(c.right.rho) << ", " << fmt(c.right.u) << ", " << fmt(c.right.v)
      << ", " << fmt(c.right.p) << "\n";
    break;
  case InitKind::density_wave:
    o << "mean = " << fmt(c.wave_mean) << "\namplitude = " << fmt(c.wave_amplitude) << "\n";
    o << "velocity = " << fmt(c.wave_u) << ", " << fmt(c.wave_v) << "\n";
    o << "pressure = " << fmt(c.wave_p) << "\n";
    o << "wave = " << c.wave_kx << ", " << c.wave_ky << "\n";
    break;
  case InitKind::disk:
    o << "center = " << fmt(c.disk_cx) << ", " << fmt(c.disk_cy) << "\n";
    o << "radius = " << fmt(c.disk_radius) << "\n";
    break;
  case InitKind::regions: break;
  }
  for (std::size_t r = 0; r < c.regions.size(); ++r) {
    const RegionSpec& rs = c.regions[r];
    o << "\n[region " << r + 1 << "]\n";
    o << "x_min = " << fmt(rs.x_min) << "\nx_max = " << fmt(rs.x_max) << "\n";
    o << "y_min = " << fmt(rs.y_min) << "\ny_max = " << fmt(rs.y_max) << "\n";
    o << "rho = " << fmt(rs.rho) << "\nu = " << fmt(rs.u) << "\nv = " << fmt(rs.v) << "\np = "
      << fmt(rs.p) << "\n";
    o << "material = " << rs.material << "\n";
  }
  o << "\n[advect]\nperiod = " << fmt(c.advect_period) << "\n";
  o << "\n[output]\n";
  o << "prefix = " << c.output_prefix << "\n";
  if (!c.dump_times.empty()) o << "dump_times = " << fmt_list(c.dump_times) << "\n";
  o << "\n[run]\nthreads = " << c.threads << "\n";
  return o.str();
}

std::uint64_t config_digest(const CaseConfig& c) {
  const std::string s = serialize_case(c);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

} // namespace lagflux
