#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lagflux/advect.hpp"
#include "lagflux/grid.hpp"
#include "lagflux/multimat.hpp"
#include "lagflux/solver.hpp"

namespace lagflux {

// Field dump: one row per interior cell at cell-center coordinates, 17
// significant digits. Header is `x,y,rho,u,v,p,e_internal` (1D omits y and v);
// multimaterial dumps append y1..yN. The first line carries the config digest.
std::string field_csv(const CartesianGrid& g, const CellField& field, PerfectGasEos eos,
                      const MaterialSet* set, const MaterialCells* mat,
                      std::uint64_t config_digest, double time);

std::string scalar_csv(const CartesianGrid& g, const ScalarField& z, std::uint64_t config_digest,
                       double time);

std::string diagnostics_csv(const std::vector<StepDiagnostics>& diag);

void write_text_file(const std::string& path, const std::string& contents);

std::string format_g17(double v);

} // namespace lagflux
