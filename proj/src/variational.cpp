#include "qdmol/variational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qdmol/errors.hpp"
#include "qdmol/mo_solver.hpp"

namespace qdmol {

NelderMeadResult
nelder_mead(const std::function<double(const std::vector<double>&)>& f,
            std::vector<double> x0, const std::vector<double>& step,
            const NelderMeadOptions& opts) {
    const int n = int(x0.size());
    NelderMeadResult res;
    struct Vertex {
        std::vector<double> x;
        double f;
    };
    std::vector<Vertex> simplex;
    auto evaluate = [&](const std::vector<double>& x) {
        ++res.n_evals;
        return f(x);
    };
    simplex.push_back({x0, evaluate(x0)});
    for (int d = 0; d < n; ++d) {
        auto x = x0;
        x[d] += step[d];
        simplex.push_back({x, evaluate(x)});
    }
    auto by_f = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
    std::sort(simplex.begin(), simplex.end(), by_f);
    res.best_history.push_back(simplex.front().f);

    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    while (res.n_evals < opts.max_evals) {
        std::sort(simplex.begin(), simplex.end(), by_f);
        res.best_history.push_back(simplex.front().f);
        if (simplex.back().f - simplex.front().f < opts.f_tol) {
            res.converged = true;
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (int v = 0; v < n; ++v)
            for (int d = 0; d < n; ++d) centroid[d] += simplex[v].x[d] / n;
        auto blend = [&](double t) {
            std::vector<double> x(n);
            for (int d = 0; d < n; ++d)
                x[d] = centroid[d] + t * (centroid[d] - simplex[n].x[d]);
            return x;
        };
        const auto xr = blend(alpha);
        const double fr = evaluate(xr);
        if (fr < simplex[0].f) {
            const auto xe = blend(gamma);
            const double fe = evaluate(xe);
            simplex[n] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
            continue;
        }
        if (fr < simplex[n - 1].f) {
            simplex[n] = {xr, fr};
            continue;
        }
        const auto xc = blend(fr < simplex[n].f ? rho : -rho);
        const double fc = evaluate(xc);
        if (fc < std::min(fr, simplex[n].f)) {
            simplex[n] = {xc, fc};
            continue;
        }
        // shrink toward the best vertex
        for (int v = 1; v <= n; ++v) {
            for (int d = 0; d < n; ++d)
                simplex[v].x[d] =
                    simplex[0].x[d] + sigma * (simplex[v].x[d] - simplex[0].x[d]);
            simplex[v].f = evaluate(simplex[v].x);
        }
    }
    std::sort(simplex.begin(), simplex.end(), by_f);
    res.x = simplex.front().x;
    res.f = simplex.front().f;
    res.best_history.push_back(res.f);
    return res;
}

VariationalFit optimize_fitting_wells(const ConfinementPotential& pot,
                                      const MaterialParams& mat,
                                      const VariationalOptions& opts) {
    const ParabolaFit base = fit_parabola_at_minima(pot, mat);

    auto objective = [&](const std::vector<double>& x) -> double {
        const double dE = x[0], da = x[1];
        if (std::abs(dE) > opts.bound_dE || std::abs(da) > opts.bound_da)
            return std::numeric_limits<double>::max() / 4.0;
        const double hw0 = base.hbar_omega0 + dE;
        const double loc = base.x_min + da;
        if (hw0 <= 0.1 || loc <= 0.1) return std::numeric_limits<double>::max() / 4.0;
        MoInput in;
        in.mat = mat;
        in.pot = pot;
        in.field = {};
        in.level = BasisLevel::hm;
        in.hbar_omega0 = hw0;
        in.half_sep = loc;
        in.quad = opts.quad;
        in.n_threads = opts.n_threads;
        const MoIntegrals ints = compute_mo_integrals(in);
        const auto states =
            build_two_electron_basis(int(ints.orbitals.size()), Sector::singlet,
                                     BasisLevel::hm);
        const auto sys = assemble(states, ints.one_body, ints.coulomb);
        const auto res = solve_generalized(sys, states, Sector::singlet);
        return res.energies(0);
    };

    NelderMeadOptions nm;
    nm.f_tol = opts.f_tol;
    nm.max_evals = opts.max_evals;
    const auto run = nelder_mead(objective, {opts.start_dE, opts.start_da},
                                 {-1.0, 0.5}, nm);
    if (!run.converged) {
        throw OptimizerDidNotConverge(
            "fitting-well optimization hit the evaluation budget");
    }

    VariationalFit fit;
    fit.delta_parabolicity = run.x[0];
    fit.delta_location = run.x[1];
    fit.ground_energy = run.f;
    fit.n_evals = run.n_evals;
    fit.base_parabolicity = base.hbar_omega0;
    fit.base_location = base.x_min;
    return fit;
}

} // namespace qdmol
