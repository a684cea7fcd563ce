#pragma once

#include <utility>
#include <vector>

namespace qdmol {

// Conduction-band material constants.  Defaults are GaAs.
struct MaterialParams {
    double effective_mass_ratio = 0.067; // m*/m0
    double dielectric_const = 13.1;      // static epsilon
    double g_factor = -0.44;             // effective g*
    double interband_coupling_Ep = 22.71; // eV
    double band_gap_Eg = 1.5192;          // eV
    double so_splitting_Delta = 0.341;    // eV

    static MaterialParams gaas() { return MaterialParams{}; }

    // e^2/eps in meV*nm
    double coulomb_scale() const;
};

// Double-dot confinement: two Gaussian wells at (+-a, 0) sharing one
// Gaussian envelope in y, plus a central Gaussian barrier.
struct ConfinementPotential {
    double V0 = -50.0; // well Gaussian strength [meV], negative for wells
    double a = 15.0;   // half inter-dot distance [nm]
    double Vb = 30.0;  // barrier Gaussian strength [meV]
    double lx = 30.0;  // well width along x [nm]
    double ly = 30.0;  // well width along y [nm]
    double lbx = 15.0; // barrier width along x [nm]
    double lby = 15.0; // barrier width along y [nm]
};

struct FieldConfig {
    double B = 0.0;              // perpendicular field [T]
    bool include_zeeman = false; // Zeeman shift of reported triplet energies
    double gauge_center_x = 0.0; // symmetric-gauge origin [nm]
    double gauge_center_y = 0.0;
};

double evaluate_potential(const ConfinementPotential& pot, double x, double y);

// analytic first/second derivatives of the potential
double potential_dx(const ConfinementPotential& pot, double x, double y);
std::pair<double, double> potential_hessian(const ConfinementPotential& pot,
                                            double x, double y);

// Location x>0 of the right-well minimum along y=0.
// Throws NoDoubleWell when the cut has a single central minimum.
double find_minimum_x(const ConfinementPotential& pot);

// Saddle height V(0,0) - V(x_min,0).
double effective_barrier(const ConfinementPotential& pot);

struct ParabolaFit {
    double hbar_omega0; // base parabolicity [meV]
    double x_min;       // base well location [nm]
};

// Osculating isotropic parabola at the right-well minimum; the curvature is
// the geometric mean of d2V/dx2 and d2V/dy2 there.
ParabolaFit fit_parabola_at_minima(const ConfinementPotential& pot,
                                   const MaterialParams& mat);

// Solve for the well depth V0 that produces the requested effective barrier
// at the given barrier strength Vb.  Other shape parameters are taken from
// the template.
double calibrate_v0(ConfinementPotential shape, double Vb,
                    double target_barrier_meV, double tol_meV = 1e-8);

struct CalibrationRow {
    double Vb;
    double V0;
    double eff_barrier;
};

// Calibrate a list of (Vb, target barrier) points, one V0 root solve each.
std::vector<CalibrationRow>
calibrate_barriers(ConfinementPotential shape, const std::vector<double>& Vb,
                   const std::vector<double>& target_barrier_meV);

struct ValidityRatios {
    double p;
    double p_prime;
};

// Scalar estimators for the single-envelope effective-mass approximation:
// p  = Ep*Ebar*(m*/m0)/Eg^2,  p' = Ep*Delta*Vbar*(m*/m0)/Eg^3.
ValidityRatios envelope_validity(const MaterialParams& mat, double E_bar_meV,
                                 double V_bar_meV);

// |g*| mu_B B in meV
double zeeman_splitting(const MaterialParams& mat, double B);

} // namespace qdmol
