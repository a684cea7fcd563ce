#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdmol/model.hpp"
#include "qdmol/types.hpp"

namespace qdmol {

enum class SolverKind { mo, uhf, hl };

struct RunConfig {
    MaterialParams mat;
    ConfinementPotential pot;
    FieldConfig field;

    std::vector<double> B_grid;        // Tesla
    std::vector<double> distance_grid; // inter-dot separation 2a [nm]
    std::vector<double> Vb_grid;       // meV
    std::vector<double> barrier_targets; // optional per-Vb calibration targets

    BasisLevel basis_level = BasisLevel::sp;
    SolverKind solver = SolverKind::mo;
    bool use_parity = true;

    std::string output_path = "out";
    std::string cache_dir;
    long seed = 1;
    int jobs = 1;
    int mesh_nx = 60;
    int mesh_ny = 30;
};

struct CliOverrides {
    std::optional<std::string> output_path;
    std::optional<std::string> cache_dir;
    std::optional<long> seed;
    std::optional<int> jobs;
};

RunConfig default_config();

// Plain-text key=value sections [material], [potential], [field], [run].
// Unknown keys and malformed values raise ConfigError with the line number.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// flag values win over file values; a warning line is emitted for conflicts
RunConfig apply_overrides(RunConfig cfg, const CliOverrides& ov,
                          std::vector<std::string>* warnings = nullptr);

std::vector<double> parse_grid(const std::string& text);

std::string basis_level_name(BasisLevel level);
std::string solver_name(SolverKind s);

} // namespace qdmol
