#pragma once

#include <functional>
#include <vector>

#include "qdmol/integrals.hpp"
#include "qdmol/model.hpp"

namespace qdmol {

struct VariationalFit {
    double delta_parabolicity = 0.0; // meV, shift from the base hbar*omega0
    double delta_location = 0.0;     // nm, shift from the base minimum
    double ground_energy = 0.0;      // meV, lowest Hund-Mulliken singlet
    int n_evals = 0;
    double base_parabolicity = 0.0;
    double base_location = 0.0;
    double parabolicity() const { return base_parabolicity + delta_parabolicity; }
    double location() const { return base_location + delta_location; }
};

struct NelderMeadOptions {
    double f_tol = 1e-4;
    int max_evals = 400;
    double initial_step = 1.0;
};

struct NelderMeadResult {
    std::vector<double> x;
    double f = 0.0;
    int n_evals = 0;
    bool converged = false;
    std::vector<double> best_history; // best value after each accepted move
};

NelderMeadResult
nelder_mead(const std::function<double(const std::vector<double>&)>& f,
            std::vector<double> x0, const std::vector<double>& step,
            const NelderMeadOptions& opts);

struct VariationalOptions {
    double bound_dE = 6.0;  // |delta parabolicity| bound [meV]
    double bound_da = 5.0;  // |delta location| bound [nm]
    double f_tol = 1e-4;    // meV
    int max_evals = 400;
    QuadOptions quad;
    int n_threads = 1;
    double start_dE = 0.0; // optimizer seed point, relative to the base
    double start_da = 0.0;
};

// Minimize the lowest Hund-Mulliken singlet energy at B=0 over the fitting
// well parabolicity and location.
VariationalFit optimize_fitting_wells(const ConfinementPotential& pot,
                                      const MaterialParams& mat,
                                      const VariationalOptions& opts = {});

} // namespace qdmol
