#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qdmol/model.hpp"

namespace qdmol {

// Cell-centered tensor mesh with an inverse-tanh stretch that concentrates
// nodes around the dots.  Weights tile the domain exactly.
struct Mesh {
    int nx = 0, ny = 0;
    std::vector<double> x, y;   // node coordinates [nm]
    std::vector<double> wx, wy; // cell widths [nm]
    double extent_x = 0.0, extent_y = 0.0; // domain is [-X,X] x [-Y,Y]
    double stretch = 0.0;

    int size() const { return nx * ny; }
    double weighted_area() const;
    // fraction of nodes with |x| <= bx and |y| <= by
    double node_fraction_within(double bx, double by) const;
};

Mesh build_mesh(int nx, int ny, double extent_x, double extent_y,
                double stretch);

// extent/stretch chosen from the potential shape and its fitted length scale
Mesh default_mesh(const ConfinementPotential& pot, const MaterialParams& mat,
                  int nx = 60, int ny = 30, double stretch = 2.2);

enum class SpinConfig { opposite, parallel };

struct UhfOptions {
    double mixing = 0.3;   // weight of the fresh density per iteration
    double tol = 1e-6;     // meV on the total energy
    int max_iter = 200;
    double coulomb_scale = 1.0; // test knob, 0 disables the interaction
    bool restricted = false;    // RHF test mode (opposite spins, one orbital)
    // optional initial orbitals (weighted convention); empty = default guess
    Eigen::VectorXcd init_up;
    Eigen::VectorXcd init_dn;
};

struct UhfState {
    Eigen::VectorXcd orbital_up;   // weighted convention sqrt(w) psi
    Eigen::VectorXcd orbital_down; // second occupied orbital for parallel
    std::vector<double> orbital_energies; // meV
    double total_energy = 0.0;            // meV
    SpinConfig spin_config = SpinConfig::opposite;
    bool converged = false;
    int iterations = 0;
    std::vector<double> energy_history;
    double s2 = 0.0; // <S^2> diagnostic
};

UhfState scf(const ConfinementPotential& pot, const FieldConfig& field,
             const MaterialParams& mat, SpinConfig spin, const Mesh& mesh,
             const UhfOptions& opts = {});

struct UhfSplit {
    double J = 0.0; // E(parallel) - E(opposite), meV
    UhfState opposite;
    UhfState parallel;
};

// Throws ScfNotConverged when either configuration fails to converge.
UhfSplit uhf_splitting(const ConfinementPotential& pot,
                       const FieldConfig& field, const MaterialParams& mat,
                       const Mesh& mesh, const UhfOptions& opts = {});

// single-particle grid Hamiltonian in the weighted (similarity) form;
// exposed for tests and for building initial guesses
Eigen::MatrixXcd grid_hamiltonian(const ConfinementPotential& pot,
                                  const FieldConfig& field,
                                  const MaterialParams& mat, const Mesh& mesh);

} // namespace qdmol
