#include "lagflux/multimat.hpp"

#include <string>

namespace lagflux {

MaterialSet make_material_set(std::vector<double> gammas) {
  if (gammas.empty()) throw ConfigError("material set needs at least one material");
  if (gammas.size() > 16) throw ConfigError("at most 16 materials are supported");
  for (double g : gammas)
    if (!(g > 1.0) || !(g <= 3.0))
      throw ConfigError("material adiabatic index must lie in (1, 3], got " +
                        std::to_string(g));
  return MaterialSet{std::move(gammas)};
}

double clamped_fraction(double partial, double rho, const CellContext* ctx) {
  const double y = partial / rho;
  if (y >= 0.0 && y <= 1.0) return y;
  if (y < -1e-11 || y > 1.0 + 1e-11)
    detail::throw_invalid("mass fraction out of [0,1] beyond round-off", y, ctx);
  return y < 0.0 ? 0.0 : 1.0;
}

double mixed_cell_gamma(const MaterialSet& set, std::span<const double> fractions) {
  double s = 0.0;
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    if (fractions[k] == 1.0) return set.gammas[k]; // pure cell, exact
    s += fractions[k] / (set.gammas[k] - 1.0);
  }
  return 1.0 + 1.0 / s;
}

void mass_fraction_fluxes(double mass_flux, std::span<const double> y_upwind,
                          std::span<double> out) {
  const std::size_t n = y_upwind.size();
  double rest = mass_flux;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    out[k] = mass_flux * y_upwind[k];
    rest -= out[k];
  }
  out[n - 1] = rest;
}

} // namespace lagflux
