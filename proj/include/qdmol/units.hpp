#pragma once

// Unit system used throughout: energies in meV, lengths in nm, magnetic
// field in Tesla, times in ps.  Everything that converts between these
// lives here so the conversion factors have exactly one home.

namespace qdmol::units {

// hbar in meV*ps
inline constexpr double hbar_meV_ps = 0.6582119569;

// hbar^2 / m0 in meV*nm^2 (m0 = bare electron mass)
inline constexpr double hbar2_over_m0_meV_nm2 = 76.199682;

// e^2 / (4 pi eps0) in meV*nm
inline constexpr double coulomb_meV_nm = 1439.96454;

// Boltzmann constant in meV/K
inline constexpr double k_B_meV_per_K = 0.0861733326;

// magnetic length squared at 1 Tesla: l_B^2 = hbar/(e B) in nm^2
inline constexpr double lB2_nm2_at_1T = 658.2119569;

// hbar e / m0 = 2 mu_B in meV/T, derived so that the length and energy
// scales stay mutually consistent to machine precision
inline constexpr double hbar_e_over_m0_meV_per_T =
    hbar2_over_m0_meV_nm2 / lB2_nm2_at_1T;

// Bohr magneton in meV/T
inline constexpr double mu_B_meV_per_T = 0.5 * hbar_e_over_m0_meV_per_T;

// SI constants for the circuit-noise estimator
inline constexpr double k_B_J_per_K = 1.380649e-23;
inline constexpr double eV_J = 1.602176634e-19;
inline constexpr double hbar_J_s = 1.054571817e-34;

// cyclotron energy hbar*omega_c for effective mass ratio mr, field B [T]
inline constexpr double hbar_omega_c(double mr, double B) {
    return hbar_e_over_m0_meV_per_T * B / mr;
}

// kinetic prefactor hbar^2/(2 m*) in meV*nm^2
inline constexpr double kinetic_factor(double mr) {
    return hbar2_over_m0_meV_nm2 / (2.0 * mr);
}

// gauge phase coefficient 1/(2 l_B^2) = eB/(2 hbar) in nm^-2
inline constexpr double inv_two_lB2(double B) {
    return B / (2.0 * lB2_nm2_at_1T);
}

} // namespace qdmol::units
