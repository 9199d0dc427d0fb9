#include "lagflux/csv.hpp"

#include <cstdio>
#include <fstream>

namespace lagflux {

std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void header_line(std::string& out, std::uint64_t digest, double time) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "# config %016llx time ", (unsigned long long)digest);
  out += buf;
  out += format_g17(time);
  out += '\n';
}

} // namespace

std::string field_csv(const CartesianGrid& g, const CellField& field, PerfectGasEos eos,
                      const MaterialSet* set, const MaterialCells* mat,
                      std::uint64_t config_digest, double time) {
  std::string out;
  out.reserve(std::size_t(g.interior_count()) * 128);
  header_line(out, config_digest, time);
  const bool dim2 = g.dim == 2;
  const int n_mat = set != nullptr && mat != nullptr ? set->count() : 0;

  out += dim2 ? "x,y,rho,u,v,p,e_internal" : "x,rho,u,p,e_internal";
  for (int k = 1; k <= n_mat; ++k) out += ",y" + std::to_string(k);
  out += '\n';

  for (int j = g.gy; j < g.gy + g.ny; ++j) {
    for (int i = g.gx; i < g.gx + g.nx; ++i) {
      const std::int64_t c = g.idx(i, j);
      const double rho = field.comp[0][c];
      const double u = field.comp[1][c] / rho;
      const double v = field.comp[2][c] / rho;
      double gamma = eos.gamma;
      double fractions[16];
      if (n_mat > 0) {
        for (int k = 0; k < n_mat; ++k)
          fractions[k] = clamped_fraction(mat->partial[std::size_t(k)][c], rho);
        gamma = mixed_cell_gamma(*set, std::span<const double>(fractions, std::size_t(n_mat)));
      }
      const double eint_density =
          field.comp[3][c] -
          0.5 * (field.comp[1][c] * field.comp[1][c] + field.comp[2][c] * field.comp[2][c]) / rho;
      const double p = (gamma - 1.0) * eint_density;
      const double e_specific = eint_density / rho;

      out += format_g17(g.xc(i));
      if (dim2) {
        out += ',';
        out += format_g17(g.yc(j));
      }
      out += ',';
      out += format_g17(rho);
      out += ',';
      out += format_g17(u);
      if (dim2) {
        out += ',';
        out += format_g17(v);
      }
      out += ',';
      out += format_g17(p);
      out += ',';
      out += format_g17(e_specific);
      for (int k = 0; k < n_mat; ++k) {
        out += ',';
        out += format_g17(fractions[k]);
      }
      out += '\n';
    }
  }
  return out;
}

std::string scalar_csv(const CartesianGrid& g, const ScalarField& z, std::uint64_t config_digest,
                       double time) {
  std::string out;
  out.reserve(std::size_t(g.interior_count()) * 48);
  header_line(out, config_digest, time);
  out += "x,y,z\n";
  for (int j = g.gy; j < g.gy + g.ny; ++j) {
    for (int i = g.gx; i < g.gx + g.nx; ++i) {
      out += format_g17(g.xc(i));
      out += ',';
      out += format_g17(g.yc(j));
      out += ',';
      out += format_g17(z.z[g.idx(i, j)]);
      out += '\n';
    }
  }
  return out;
}

std::string diagnostics_csv(const std::vector<StepDiagnostics>& diag) {
  std::string out = "step,time,dt,min_rho,min_p\n";
  for (const StepDiagnostics& d : diag) {
    out += std::to_string(d.step);
    out += ',';
    out += format_g17(d.time);
    out += ',';
    out += format_g17(d.dt);
    out += ',';
    out += format_g17(d.min_rho);
    out += ',';
    out += format_g17(d.min_p);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << contents;
  if (!out) throw Error("short write to file: " + path);
}

} // namespace lagflux
