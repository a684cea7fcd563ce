#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qdmol/analysis.hpp"
#include "qdmol/cache.hpp"
#include "qdmol/config.hpp"
#include "qdmol/errors.hpp"
#include "qdmol/mo_solver.hpp"
#include "qdmol/sweep.hpp"
#include "qdmol/uhf.hpp"
#include "qdmol/units.hpp"
#include "qdmol/variational.hpp"

using namespace qdmol;

namespace {

struct CommonFlags {
    std::string config_path;
    std::string preset;
    std::string out;
    std::string cache;
    long seed = -1;
    int jobs = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_preset) {
    cmd->add_option("--config", f.config_path, "key=value config file");
    if (with_preset)
        cmd->add_option("--preset", f.preset,
                        "named run: fig2..fig11 or table1");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--cache", f.cache, "coulomb tensor cache directory");
    cmd->add_option("--seed", f.seed, "seed recorded for reproducibility");
    cmd->add_option("--jobs", f.jobs, "worker pool size");
}

RunConfig load_config(const CommonFlags& f) {
    RunConfig cfg =
        f.config_path.empty() ? default_config() : parse_config_file(f.config_path);
    CliOverrides ov;
    if (!f.out.empty()) ov.output_path = f.out;
    if (!f.cache.empty()) ov.cache_dir = f.cache;
    if (f.seed >= 0) ov.seed = f.seed;
    if (f.jobs > 0) ov.jobs = f.jobs;
    std::vector<std::string> warnings;
    cfg = apply_overrides(cfg, ov, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return cfg;
}

int finish(const SweepOutcome& out) {
    for (const auto& f : out.files) std::cout << "wrote " << f << "\n";
    if (out.exit_code != 0) {
        std::cerr << "error: numerical: " << out.error << "\n";
    }
    return out.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-electron double quantum dot simulator"};
    app.require_subcommand(1);

    CommonFlags sweep_flags, spec_flags, var_flags, uhf_flags, cal_flags,
        ana_flags;

    auto* sweep_cmd = app.add_subcommand("sweep", "run the configured sweep");
    add_common(sweep_cmd, sweep_flags, true);

    auto* spec_cmd =
        app.add_subcommand("spectrum", "molecular-orbital spectrum scan");
    add_common(spec_cmd, spec_flags, false);

    auto* var_cmd =
        app.add_subcommand("variational", "fitting-well optimization table");
    add_common(var_cmd, var_flags, false);

    auto* uhf_cmd =
        app.add_subcommand("uhf", "unrestricted Hartree-Fock sweep");
    add_common(uhf_cmd, uhf_flags, false);

    auto* cal_cmd =
        app.add_subcommand("calibrate", "solve well depths for barrier targets");
    add_common(cal_cmd, cal_flags, false);
    std::string cal_targets, cal_vb;
    cal_cmd->add_option("--targets", cal_targets,
                        "comma list of effective barrier heights [meV]");
    cal_cmd->add_option("--vb", cal_vb,
                        "comma list of barrier strengths Vb [meV]");

    auto* ana_cmd = app.add_subcommand("analyze", "gate error estimators");
    add_common(ana_cmd, ana_flags, false);
    double ana_J = 0.1, ana_gap = 8.0, ana_dB = 1.0, ana_R = 50.0,
           ana_T = 1.0, ana_alpha = 0.021;
    std::string ana_csv;
    ana_cmd->add_option("--J", ana_J, "exchange coupling [meV]");
    ana_cmd->add_option("--gap", ana_gap, "orbital gap [meV]");
    ana_cmd->add_option("--delta-B", ana_dB, "field mismatch [T]");
    ana_cmd->add_option("--R", ana_R, "circuit resistance [ohm]");
    ana_cmd->add_option("--T", ana_T, "circuit temperature [K]");
    ana_cmd->add_option("--alpha", ana_alpha, "dJ/dV slope [eV/V]");
    ana_cmd->add_option("--from-csv", ana_csv,
                        "derive alpha from a sweep CSV (Vb_meV,J_meV columns)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (sweep_cmd->parsed()) {
            RunConfig cfg = load_config(sweep_flags);
            if (!sweep_flags.preset.empty()) {
                int rc = 0;
                for (auto& [pc, tag] : preset_runs(sweep_flags.preset, cfg)) {
                    RunConfig run = pc;
                    run.output_path = cfg.output_path;
                    run.cache_dir = cfg.cache_dir;
                    run.jobs = cfg.jobs;
                    run.seed = cfg.seed;
                    const SweepOutcome out = preset_is_variational(tag)
                                                 ? run_variational(run, tag)
                                                 : run_sweep(run, tag);
                    rc = std::max(rc, finish(out));
                }
                return rc;
            }
            return finish(run_sweep(cfg, "sweep_" + solver_name(cfg.solver)));
        }
        if (spec_cmd->parsed()) {
            RunConfig cfg = load_config(spec_flags);
            cfg.solver = SolverKind::mo;
            return finish(run_sweep(cfg, "spectrum"));
        }
        if (var_cmd->parsed()) {
            RunConfig cfg = load_config(var_flags);
            return finish(run_variational(cfg, "variational"));
        }
        if (uhf_cmd->parsed()) {
            RunConfig cfg = load_config(uhf_flags);
            cfg.solver = SolverKind::uhf;
            return finish(run_sweep(cfg, "uhf"));
        }
        if (cal_cmd->parsed()) {
            RunConfig cfg = load_config(cal_flags);
            std::vector<double> targets = cfg.barrier_targets;
            if (!cal_targets.empty()) targets = parse_grid(cal_targets);
            if (!cal_vb.empty()) cfg.Vb_grid = parse_grid(cal_vb);
            if (targets.size() != cfg.Vb_grid.size()) {
                throw ConfigError("need one barrier target per Vb value");
            }
            ConfinementPotential shape = cfg.pot;
            shape.a = cfg.distance_grid.front() / 2.0;
            const auto rows = calibrate_barriers(shape, cfg.Vb_grid, targets);
            std::filesystem::create_directories(cfg.output_path);
            const std::string path = cfg.output_path + "/calibration.csv";
            std::ofstream f(path);
            f << "Vb_meV,V0_meV,eff_barrier_meV\n";
            for (const auto& r : rows) {
                f << format_csv_double(r.Vb) << ','
                  << format_csv_double(r.V0) << ','
                  << format_csv_double(r.eff_barrier) << '\n';
                std::printf(
                    "Vb = %6.2f meV  ->  V0 = %9.4f meV  (barrier %.4f meV)\n",
                    r.Vb, r.V0, r.eff_barrier);
            }
            std::cout << "wrote " << path << "\n";
            return 0;
        }
        if (ana_cmd->parsed()) {
            RunConfig cfg = load_config(ana_flags);
            double alpha = ana_alpha;
            if (!ana_csv.empty()) {
                std::ifstream f(ana_csv);
                if (!f) throw ConfigError("cannot open " + ana_csv);
                std::string header;
                std::getline(f, header);
                std::vector<std::string> cols;
                {
                    std::istringstream hs(header);
                    std::string c;
                    while (std::getline(hs, c, ',')) cols.push_back(c);
                }
                int vb_col = -1, j_col = -1;
                for (std::size_t c = 0; c < cols.size(); ++c) {
                    if (cols[c] == "Vb_meV") vb_col = int(c);
                    if (cols[c] == "J_meV") j_col = int(c);
                }
                if (vb_col < 0 || j_col < 0)
                    throw ConfigError("CSV lacks Vb_meV/J_meV columns");
                std::vector<std::pair<double, double>> table;
                std::string line;
                while (std::getline(f, line)) {
                    std::istringstream ls(line);
                    std::string cell;
                    std::vector<std::string> cells;
                    while (std::getline(ls, cell, ',')) cells.push_back(cell);
                    if (int(cells.size()) <= std::max(vb_col, j_col)) continue;
                    table.push_back(
                        {std::stod(cells[vb_col]), std::stod(cells[j_col])});
                }
                alpha = alpha_from_sweep(table);
            }
            const SwapTime ts = swap_time(ana_J);
            const NoiseEstimate noise =
                phase_noise(ana_R, ana_T, alpha, ts.raw_ps * 1e-12);
            const double mismatch =
                zeeman_phase_mismatch(ana_J, ana_dB, cfg.mat);
            std::printf("adiabatic lower bound  : %.4f ps (gap %.3f meV)\n",
                        adiabatic_lower_bound(ana_gap), ana_gap);
            std::printf("swap time              : %.4f ps raw, %.4f ps padded\n",
                        ts.raw_ps, ts.padded_ps);
            std::printf("zeeman phase mismatch  : %.4f (dB = %.3f T)\n",
                        mismatch, ana_dB);
            std::printf("dJ/dV slope alpha      : %.5f eV/V\n", alpha);
            std::printf("phase variance rate    : %.4g 1/s\n",
                        noise.phase_var_rate);
            std::printf("phase variance per swap: %.4g\n", noise.phase_var);
            std::filesystem::create_directories(cfg.output_path);
            const std::string path = cfg.output_path + "/analyze.csv";
            std::ofstream f(path);
            f << "J_meV,gap_meV,delta_B_T,R_ohm,T_K,alpha_eV_per_V,"
                 "adiabatic_ps,t_swap_raw_ps,t_swap_padded_ps,"
                 "zeeman_mismatch,phase_var_rate_per_s,phase_var\n";
            f << format_csv_double(ana_J) << ',' << format_csv_double(ana_gap)
              << ',' << format_csv_double(ana_dB) << ','
              << format_csv_double(ana_R) << ',' << format_csv_double(ana_T)
              << ',' << format_csv_double(alpha) << ','
              << format_csv_double(adiabatic_lower_bound(ana_gap)) << ','
              << format_csv_double(ts.raw_ps) << ','
              << format_csv_double(ts.padded_ps) << ','
              << format_csv_double(mismatch) << ','
              << format_csv_double(noise.phase_var_rate) << ','
              << format_csv_double(noise.phase_var) << '\n';
            std::cout << "wrote " << path << "\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: numerical: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
