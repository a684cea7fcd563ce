#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qdmol/config.hpp"
#include "qdmol/variational.hpp"

namespace qdmol {

struct SweepOutcome {
    int exit_code = 0; // 0 ok, 3 numerical failure
    std::vector<std::string> files;
    std::string error;
};

// Run the configured sweep, writing one CSV per solver under
// cfg.output_path with the given file tag.
SweepOutcome run_sweep(const RunConfig& cfg, const std::string& tag);

// Variational fit table over the (Vb, target) grid of cfg.
struct VariationalRow {
    double Vb = 0.0;
    double eff_barrier = 0.0;
    VariationalFit fit;
};

std::vector<VariationalRow> variational_table(const RunConfig& cfg);

SweepOutcome run_variational(const RunConfig& cfg, const std::string& tag);

// presets reproduce the standard figure/table runs; each entry is a
// (config, file tag) pair executed in order
std::vector<std::pair<RunConfig, std::string>>
preset_runs(const std::string& name, const RunConfig& base);

std::vector<std::string> preset_names();

bool preset_is_variational(const std::string& tag);

std::string format_csv_double(double v);

} // namespace qdmol
