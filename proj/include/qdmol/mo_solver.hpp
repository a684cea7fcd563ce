#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "qdmol/basis.hpp"
#include "qdmol/integrals.hpp"
#include "qdmol/model.hpp"
#include "qdmol/types.hpp"

namespace qdmol {

// (Anti)symmetrized product of two single-particle functions, indexed into
// the orbital (or parity-combo) list.  norm_factor is 1/sqrt(2) for i != j.
struct TwoElectronState {
    int i = 0, j = 0;
    Sector sector = Sector::singlet;
    std::optional<Parity> parity;
    double norm_factor = 1.0;
};

std::vector<TwoElectronState> build_two_electron_basis(int n_orbitals,
                                                       Sector sector,
                                                       BasisLevel level);

// parity-adapted variant; orbital_parity[i] labels the i-th combo
std::vector<TwoElectronState>
build_two_electron_basis(const std::vector<Parity>& orbital_parity,
                         Sector sector, BasisLevel level);

struct AssembledSystem {
    Eigen::MatrixXcd H;
    Eigen::MatrixXcd S;
};

AssembledSystem assemble(const std::vector<TwoElectronState>& states,
                         const OneBodyMatrix& one_body,
                         const CoulombTensor& coulomb);

struct SpectrumResult {
    Eigen::VectorXd energies;      // ascending, meV
    Eigen::MatrixXcd coefficients; // columns, c^dag S c = 1
    Eigen::MatrixXcd S;
    std::vector<TwoElectronState> states;
    Sector sector = Sector::singlet;
};

SpectrumResult solve_generalized(const AssembledSystem& sys,
                                 const std::vector<TwoElectronState>& states,
                                 Sector sector);

// squared amplitude of the doubly-occupied configuration `config_index`
// in the Loewdin-orthogonalized expansion of the ground eigenvector
double double_occupation(const SpectrumResult& result, int config_index);

// Inputs for one molecular-orbital diagonalization at fixed field.
struct MoInput {
    MaterialParams mat;
    ConfinementPotential pot;
    FieldConfig field;
    BasisLevel level = BasisLevel::hm;
    bool use_parity = false;
    double hbar_omega0 = 0.0; // fitted parabolicity [meV]
    double half_sep = 0.0;    // fitted well location [nm]
    QuadOptions quad;
    int n_threads = 1;
};

struct MoResult {
    SpectrumResult singlet;
    SpectrumResult triplet;
    double J = 0.0;        // E_T(min) - E_S(min), meV
    double P_double = 0.0; // left-dot double occupation of the ground singlet
    double P_double_both = 0.0; // left plus right doubly-occupied weight
    std::vector<double> all_energies; // both sectors merged, sorted
    std::vector<Sector> all_sectors;
};

MoResult mo_solve(const MoInput& in);

// reuse precomputed integrals (shared across sectors / parity toggles)
struct MoIntegrals {
    std::vector<Orbital> orbitals;
    OneBodyMatrix one_body;
    CoulombTensor coulomb;
};

MoIntegrals compute_mo_integrals(const MoInput& in);
MoResult mo_solve_with(const MoInput& in, const MoIntegrals& ints);

} // namespace qdmol
