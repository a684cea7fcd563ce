#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "qdmol/integrals.hpp"
#include "qdmol/model.hpp"

namespace qdmol {

// Heitler-London singlet/triplet splitting split into the single-particle
// potential-mismatch part J_r and the Coulomb direct-minus-exchange part J_c.
struct HLDecomposition {
    double J_total = 0.0; // meV
    double J_r = 0.0;
    double J_c = 0.0;
    cdouble S_LR{0.0, 0.0};
};

HLDecomposition heitler_london_J(const ConfinementPotential& pot,
                                 const FieldConfig& field,
                                 const MaterialParams& mat,
                                 double hbar_omega0, double half_sep,
                                 const QuadOptions& quad = {});

// hbar / gap, in ps
double adiabatic_lower_bound(double gap_meV);

struct SwapTime {
    double raw_ps;    // pi*hbar/|J|
    double padded_ps; // with the adiabaticity padding factor
};

inline constexpr double kAdiabaticPadding = 13.0;

SwapTime swap_time(double J_meV);

// g* mu_B dB / J
double zeeman_phase_mismatch(double J_meV, double delta_B_T,
                             const MaterialParams& mat);

struct NoiseEstimate {
    double R_ohm = 0.0;
    double T_K = 0.0;
    double alpha_eV_per_V = 0.0;
    double t_s = 0.0;
    double phase_var_rate = 0.0; // 1/s
    double phase_var = 0.0;
};

// white-noise gate-voltage phase variance <dphi^2> = 4 R kB T alpha^2 t / hbar^2
NoiseEstimate phase_noise(double R_ohm, double T_K, double alpha_eV_per_V,
                          double t_s);

// least-squares |dJ/dVb| from a (Vb, J) table, in eV/V
double alpha_from_sweep(const std::vector<std::pair<double, double>>& J_vs_Vb);

} // namespace qdmol
