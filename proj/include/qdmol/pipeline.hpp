#pragma once

#include <optional>
#include <vector>

#include "qdmol/mo_solver.hpp"
#include "qdmol/model.hpp"
#include "qdmol/types.hpp"
#include "qdmol/variational.hpp"

namespace qdmol {

// Everything needed to run the molecular-orbital pipeline at one geometry.
// The fitting-well parameters come from the variational optimization unless
// a fit override is supplied.
struct SolveSpec {
    MaterialParams mat;
    ConfinementPotential pot;
    FieldConfig field;
    BasisLevel level = BasisLevel::sp;
    bool use_parity = true;
    std::optional<VariationalFit> fit;
    QuadOptions quad;
    int n_threads = 1;
};

VariationalFit ensure_fit(const SolveSpec& spec);

MoResult solve_spectrum(const SolveSpec& spec);

// J = E(lowest triplet) - E(lowest singlet)
double exchange_coupling(const SolveSpec& spec);

struct ScanRow {
    double B = 0.0;
    MoResult result;
};

std::vector<ScanRow> spectrum_scan(const SolveSpec& spec,
                                   const std::vector<double>& B_grid);

} // namespace qdmol
