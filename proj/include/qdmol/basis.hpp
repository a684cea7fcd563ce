#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "qdmol/gauss2d.hpp"
#include "qdmol/model.hpp"

namespace qdmol {

// Characteristic scales of the Fock-Darwin problem.  Frequencies are stored
// as energies hbar*omega in meV; lB is +inf at zero field.
struct LengthScales {
    double l0 = 0.0;            // nm
    double lB = 0.0;            // nm
    double hbar_omega_c = 0.0;  // meV
    double hbar_omega0 = 0.0;   // meV
    double inv_two_lB2 = 0.0;   // 1/(2 lB^2), finite at B=0 [nm^-2]
    double hbar_omega_eff = 0.0; // hbar*sqrt(omega0^2 + omega_c^2/4) [meV]
};

LengthScales length_scales(double B, double hbar_omega0,
                           const MaterialParams& mat);

// A single Fock-Darwin basis function centered on (center, 0) with the
// magnetic-translation gauge phase for a symmetric gauge anchored at
// (gauge_x, gauge_y).  Only n=0, m in {0, +-1} are used here.
struct Orbital {
    double center = 0.0; // nm, signed
    int n = 0;
    int m = 0; // 0: s, +-1: p
    double l0 = 0.0;
    double lB = 0.0;
    double phase_kx = 0.0; // plane-wave part exp(i(kx x + ky y))
    double phase_ky = 0.0;
    int gauge_phase_sign() const { return center > 0.0 ? -1 : +1; }
};

Orbital make_orbital(int m, double center, const LengthScales& scales,
                     const FieldConfig& field = {});

// standard orbital lists, centers at -+abs(center)
// hm: [sL, sR]; sp: [sL, sR, p-L, p-R, p+L, p+R]
std::vector<Orbital> make_s_basis(double half_sep, const LengthScales& scales,
                                  const FieldConfig& field = {});
std::vector<Orbital> make_sp_basis(double half_sep, const LengthScales& scales,
                                   const FieldConfig& field = {});

GaussSum orbital_function(const Orbital& orb);

cdouble eval_orbital(const Orbital& orb, double x, double y);

// <phi1|phi2> in closed form; both orbitals must share l0 and gauge
cdouble overlap(const Orbital& a, const Orbital& b);

enum class Parity { even, odd };

// A fixed linear combination of primitive orbitals (index, coefficient),
// used for the parity-adapted single-particle basis.
struct OrbitalCombo {
    std::vector<std::pair<int, cdouble>> parts;
    Parity parity = Parity::even;
};

// Inversion-symmetrized combinations (phi_c +- sigma phi_-c)/norm with
// sigma = (-1)^|m|.  Orbitals must come in mirror pairs about x=0.
std::vector<OrbitalCombo> parity_symmetrize(const std::vector<Orbital>& orbs);

} // namespace qdmol
