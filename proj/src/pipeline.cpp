#include "qdmol/pipeline.hpp"

namespace qdmol {

VariationalFit ensure_fit(const SolveSpec& spec) {
    if (spec.fit) return *spec.fit;
    VariationalOptions vo;
    vo.quad = spec.quad;
    vo.n_threads = spec.n_threads;
    return optimize_fitting_wells(spec.pot, spec.mat, vo);
}

MoResult solve_spectrum(const SolveSpec& spec) {
    const VariationalFit fit = ensure_fit(spec);
    MoInput in;
    in.mat = spec.mat;
    in.pot = spec.pot;
    in.field = spec.field;
    in.level = spec.level;
    in.use_parity = spec.use_parity;
    in.hbar_omega0 = fit.parabolicity();
    in.half_sep = fit.location();
    in.quad = spec.quad;
    in.n_threads = spec.n_threads;
    return mo_solve(in);
}

double exchange_coupling(const SolveSpec& spec) {
    return solve_spectrum(spec).J;
}

std::vector<ScanRow> spectrum_scan(const SolveSpec& spec,
                                   const std::vector<double>& B_grid) {
    SolveSpec local = spec;
    local.fit = ensure_fit(spec); // fitted once at B=0, reused over the scan
    std::vector<ScanRow> rows;
    rows.reserve(B_grid.size());
    for (double B : B_grid) {
        local.field.B = B;
        ScanRow row;
        row.B = B;
        row.result = solve_spectrum(local);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace qdmol
