#include "qdmol/sweep.hpp"

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <thread>

#include "qdmol/cache.hpp"
#include "qdmol/errors.hpp"
#include "qdmol/mo_solver.hpp"
#include "qdmol/pipeline.hpp"
#include "qdmol/uhf.hpp"

namespace qdmol {

std::string format_csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

struct Task {
    double distance; // nm
    double Vb;
    double V0; // resolved well depth
};

std::vector<Task> resolve_tasks(const RunConfig& cfg) {
    std::vector<Task> tasks;
    for (double d : cfg.distance_grid) {
        for (std::size_t v = 0; v < cfg.Vb_grid.size(); ++v) {
            Task t;
            t.distance = d;
            t.Vb = cfg.Vb_grid[v];
            ConfinementPotential pot = cfg.pot;
            pot.a = d / 2.0;
            pot.Vb = t.Vb;
            if (!cfg.barrier_targets.empty()) {
                t.V0 = calibrate_v0(pot, t.Vb, cfg.barrier_targets[v]);
            } else {
                t.V0 = cfg.pot.V0;
            }
            tasks.push_back(t);
        }
    }
    return tasks;
}

void run_pool(int jobs, std::size_t n_tasks,
              const std::function<void(std::size_t)>& work) {
    if (jobs <= 1 || n_tasks <= 1) {
        for (std::size_t t = 0; t < n_tasks; ++t) work(t);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto loop = [&]() {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= n_tasks) return;
            work(t);
        }
    };
    std::vector<std::thread> pool;
    const int nw = std::min<std::size_t>(jobs, n_tasks);
    for (int i = 0; i < nw; ++i) pool.emplace_back(loop);
    for (auto& th : pool) th.join();
}

SweepOutcome run_mo_sweep(const RunConfig& cfg, const std::string& tag) {
    SweepOutcome out;
    const auto tasks = resolve_tasks(cfg);
    const int n_state =
        cfg.basis_level == BasisLevel::sp ? 36
        : cfg.basis_level == BasisLevel::hm ? 4
                                            : 2;
    struct TaskResult {
        std::vector<std::string> rows;
        std::string error;
    };
    std::vector<TaskResult> results(tasks.size());

    auto work = [&](std::size_t ti) {
        const Task& task = tasks[ti];
        TaskResult& res = results[ti];
        try {
            ConfinementPotential pot = cfg.pot;
            pot.a = task.distance / 2.0;
            pot.Vb = task.Vb;
            pot.V0 = task.V0;
            VariationalOptions vo;
            const VariationalFit fit = optimize_fitting_wells(pot, cfg.mat, vo);
            for (double B : cfg.B_grid) {
                MoInput in;
                in.mat = cfg.mat;
                in.pot = pot;
                in.field = cfg.field;
                in.field.B = B;
                in.level = cfg.basis_level;
                in.use_parity =
                    cfg.use_parity && cfg.basis_level != BasisLevel::hl;
                in.hbar_omega0 = fit.parabolicity();
                in.half_sep = fit.location();
                const MoIntegrals ints =
                    cfg.cache_dir.empty()
                        ? compute_mo_integrals(in)
                        : cached_mo_integrals(in, cfg.cache_dir);
                const MoResult mo = mo_solve_with(in, ints);
                std::string row = format_csv_double(B) + "," +
                                  format_csv_double(task.Vb) + "," +
                                  format_csv_double(task.distance);
                for (double e : mo.all_energies)
                    row += "," + format_csv_double(e);
                row += "," + format_csv_double(mo.J) + "," +
                       format_csv_double(mo.P_double) + "," +
                       basis_level_name(cfg.basis_level);
                res.rows.push_back(row);
            }
        } catch (const std::exception& e) {
            res.error = e.what();
        }
    };
    run_pool(cfg.jobs, tasks.size(), work);

    std::filesystem::create_directories(cfg.output_path);
    const std::string path = cfg.output_path + "/" + tag + ".csv";
    std::ofstream f(path);
    f << "B_T,Vb_meV,distance_nm";
    for (int k = 1; k <= n_state; ++k) f << ",E" << k << "_meV";
    f << ",J_meV,P_double,basis_level\n";
    for (const auto& res : results) {
        for (const auto& row : res.rows) f << row << "\n";
        if (!res.error.empty()) {
            out.exit_code = 3;
            out.error = res.error;
        }
    }
    out.files.push_back(path);
    return out;
}

SweepOutcome run_uhf_sweep(const RunConfig& cfg, const std::string& tag) {
    SweepOutcome out;
    const auto tasks = resolve_tasks(cfg);
    struct TaskResult {
        std::vector<std::string> rows;
        std::string error;
    };
    std::vector<TaskResult> results(tasks.size());

    auto work = [&](std::size_t ti) {
        const Task& task = tasks[ti];
        TaskResult& res = results[ti];
        try {
            ConfinementPotential pot = cfg.pot;
            pot.a = task.distance / 2.0;
            pot.Vb = task.Vb;
            pot.V0 = task.V0;
            const Mesh mesh =
                default_mesh(pot, cfg.mat, cfg.mesh_nx, cfg.mesh_ny);
            for (double B : cfg.B_grid) {
                FieldConfig field = cfg.field;
                field.B = B;
                const UhfSplit split =
                    uhf_splitting(pot, field, cfg.mat, mesh);
                std::string row =
                    format_csv_double(B) + "," +
                    format_csv_double(split.opposite.total_energy) + "," +
                    format_csv_double(split.parallel.total_energy) + "," +
                    format_csv_double(split.J) + "," +
                    std::to_string(split.opposite.iterations) + "," +
                    std::to_string(split.parallel.iterations) + "," +
                    (split.opposite.converged ? "1" : "0") + "," +
                    (split.parallel.converged ? "1" : "0") + "," +
                    format_csv_double(task.distance) + "," +
                    format_csv_double(task.Vb);
                res.rows.push_back(row);
            }
        } catch (const std::exception& e) {
            res.error = e.what();
        }
    };
    run_pool(cfg.jobs, tasks.size(), work);

    std::filesystem::create_directories(cfg.output_path);
    const std::string path = cfg.output_path + "/" + tag + ".csv";
    std::ofstream f(path);
    f << "B_T,E_opposite_meV,E_parallel_meV,J_uhf_meV,iters_opposite,"
         "iters_parallel,converged_opposite,converged_parallel,distance_nm,"
         "Vb_meV\n";
    for (const auto& res : results) {
        for (const auto& row : res.rows) f << row << "\n";
        if (!res.error.empty()) {
            out.exit_code = 3;
            out.error = res.error;
        }
    }
    out.files.push_back(path);
    return out;
}

} // namespace

SweepOutcome run_sweep(const RunConfig& cfg, const std::string& tag) {
    if (cfg.solver == SolverKind::uhf) return run_uhf_sweep(cfg, tag);
    return run_mo_sweep(cfg, tag);
}

std::vector<VariationalRow> variational_table(const RunConfig& cfg) {
    std::vector<VariationalRow> rows;
    const double d = cfg.distance_grid.front();
    for (std::size_t v = 0; v < cfg.Vb_grid.size(); ++v) {
        ConfinementPotential pot = cfg.pot;
        pot.a = d / 2.0;
        pot.Vb = cfg.Vb_grid[v];
        if (!cfg.barrier_targets.empty()) {
            pot.V0 = calibrate_v0(pot, pot.Vb, cfg.barrier_targets[v]);
        }
        VariationalRow row;
        row.Vb = pot.Vb;
        row.eff_barrier = effective_barrier(pot);
        row.fit = optimize_fitting_wells(pot, cfg.mat);
        rows.push_back(row);
    }
    return rows;
}

SweepOutcome run_variational(const RunConfig& cfg, const std::string& tag) {
    SweepOutcome out;
    std::filesystem::create_directories(cfg.output_path);
    const std::string path = cfg.output_path + "/" + tag + ".csv";
    std::ofstream f(path);
    f << "Vb_meV,eff_barrier_meV,delta_parab_meV,actual_parab_meV,"
         "delta_loc_nm,actual_loc_nm\n";
    try {
        for (const auto& row : variational_table(cfg)) {
            f << format_csv_double(row.Vb) << ','
              << format_csv_double(row.eff_barrier) << ','
              << format_csv_double(row.fit.delta_parabolicity) << ','
              << format_csv_double(row.fit.parabolicity()) << ','
              << format_csv_double(row.fit.delta_location) << ','
              << format_csv_double(row.fit.location()) << '\n';
        }
    } catch (const std::exception& e) {
        out.exit_code = 3;
        out.error = e.what();
    }
    out.files.push_back(path);
    return out;
}

namespace {

RunConfig thirty_nm_base(const RunConfig& base) {
    RunConfig cfg = base;
    cfg.pot = ConfinementPotential{};
    cfg.pot.a = 15.0;
    cfg.distance_grid = {30.0};
    cfg.Vb_grid = {20.0, 25.0, 30.0};
    cfg.barrier_targets = {3.38, 6.28, 9.61};
    return cfg;
}

RunConfig forty_nm_base(const RunConfig& base) {
    RunConfig cfg = base;
    cfg.pot = ConfinementPotential{};
    cfg.pot.a = 20.0;
    cfg.distance_grid = {40.0};
    cfg.Vb_grid = {13.86, 18.17, 20.0};
    cfg.barrier_targets = {6.28, 9.61, 11.03};
    return cfg;
}

// denser barrier scan used by the 40 nm figure presets
void forty_nm_dense(RunConfig& cfg) {
    cfg.Vb_grid = {13.86, 15.44, 16.99, 18.17, 19.06, 20.0};
    cfg.barrier_targets = {6.28, 7.5, 8.7, 9.61, 10.3, 11.03};
}

} // namespace

std::vector<std::string> preset_names() {
    return {"fig2", "fig3", "fig4", "fig5",  "fig6",  "fig7",
            "fig8", "fig9", "fig10", "fig11", "table1"};
}

bool preset_is_variational(const std::string& tag) {
    return tag.rfind("fig8", 0) == 0 || tag.rfind("table1", 0) == 0;
}

std::vector<std::pair<RunConfig, std::string>>
preset_runs(const std::string& name, const RunConfig& base) {
    std::vector<std::pair<RunConfig, std::string>> runs;
    if (name == "fig2") {
        RunConfig cfg = thirty_nm_base(base);
        cfg.solver = SolverKind::uhf;
        cfg.Vb_grid = {20.0};
        cfg.barrier_targets = {3.38};
        cfg.B_grid = parse_grid("0:7:1");
        cfg.mesh_nx = std::min(cfg.mesh_nx, 40);
        cfg.mesh_ny = std::min(cfg.mesh_ny, 20);
        runs.push_back({cfg, "fig2_uhf"});
        // thicker barrier at the same effective height
        RunConfig thick = cfg;
        thick.pot.lbx += 2.0;
        runs.push_back({thick, "fig2_uhf_thicker_barrier"});
    } else if (name == "fig3") {
        RunConfig cfg = thirty_nm_base(base);
        cfg.solver = SolverKind::uhf;
        cfg.Vb_grid = {20.0};
        cfg.barrier_targets.clear();
        ConfinementPotential cal = cfg.pot;
        cal.Vb = 20.0;
        cfg.pot.V0 = calibrate_v0(cal, 20.0, 3.38);
        cfg.B_grid = {0.0};
        cfg.distance_grid = {24.0, 28.0, 32.0, 36.0, 40.0};
        cfg.mesh_nx = std::min(cfg.mesh_nx, 40);
        cfg.mesh_ny = std::min(cfg.mesh_ny, 20);
        runs.push_back({cfg, "fig3_uhf_distance"});
    } else if (name == "fig4") {
        RunConfig cfg = thirty_nm_base(base);
        cfg.solver = SolverKind::mo;
        cfg.basis_level = BasisLevel::hm;
        runs.push_back({cfg, "fig4_hm"});
    } else if (name == "fig5") {
        RunConfig cfg = thirty_nm_base(base);
        cfg.solver = SolverKind::mo;
        cfg.basis_level = BasisLevel::sp;
        cfg.Vb_grid = {30.0};
        cfg.barrier_targets = {9.61};
        runs.push_back({cfg, "fig5_sp_spectrum"});
    } else if (name == "fig6" || name == "fig7") {
        RunConfig cfg = thirty_nm_base(base);
        cfg.solver = SolverKind::mo;
        if (name == "fig6") {
            cfg.basis_level = BasisLevel::hm;
            runs.push_back({cfg, "fig6_hm"});
        }
        cfg.basis_level = BasisLevel::sp;
        runs.push_back({cfg, name == "fig6" ? "fig6_sp" : "fig7_sp"});
    } else if (name == "fig8") {
        RunConfig cfg = forty_nm_base(base);
        forty_nm_dense(cfg);
        runs.push_back({cfg, "fig8_variational"});
    } else if (name == "fig9" || name == "fig10") {
        RunConfig cfg = forty_nm_base(base);
        cfg.solver = SolverKind::mo;
        if (name == "fig9") {
            cfg.basis_level = BasisLevel::hm;
            runs.push_back({cfg, "fig9_hm"});
        }
        cfg.basis_level = BasisLevel::sp;
        runs.push_back({cfg, name == "fig9" ? "fig9_sp" : "fig10_sp"});
    } else if (name == "fig11") {
        RunConfig cfg = forty_nm_base(base);
        forty_nm_dense(cfg);
        cfg.solver = SolverKind::mo;
        cfg.basis_level = BasisLevel::sp;
        cfg.B_grid = {0.0};
        runs.push_back({cfg, "fig11_sp_barrier"});
    } else if (name == "table1") {
        RunConfig cfg = thirty_nm_base(base);
        runs.push_back({cfg, "table1_variational"});
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    return runs;
}

} // namespace qdmol
