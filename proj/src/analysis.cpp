#include "qdmol/analysis.hpp"

#include <cmath>

#include "qdmol/basis.hpp"
#include "qdmol/errors.hpp"
#include "qdmol/units.hpp"

namespace qdmol {

HLDecomposition heitler_london_J(const ConfinementPotential& pot,
                                 const FieldConfig& field,
                                 const MaterialParams& mat,
                                 double hbar_omega0, double half_sep,
                                 const QuadOptions& quad) {
    const LengthScales scales = length_scales(field.B, hbar_omega0, mat);
    const Orbital L = make_orbital(0, -half_sep, scales, field);
    const Orbital R = make_orbital(0, +half_sep, scales, field);
    const GaussSum fL = orbital_function(L);
    const GaussSum fR = orbital_function(R);

    const cdouble S = overlap(L, R);
    const double S2 = std::norm(S);
    const double pref = 2.0 / (1.0 - S2 * S2);

    // fitting parabola V_X = (m* w0^2/2) |r - r_X|^2 + V(x_min), as a
    // polynomial factor; the constant offset cancels inside J_r
    const double h2m = units::hbar2_over_m0_meV_nm2 / mat.effective_mass_ratio;
    const double curv = hbar_omega0 * hbar_omega0 / h2m; // m* w0^2 [meV/nm^2]
    const double voff = evaluate_potential(pot, find_minimum_x(pot), 0.0);
    auto delta_v_apply = [&](const GaussSum& f, double cx) {
        // (V - V_X) f
        GaussSum vf = product(potential_terms(pot), f);
        GaussSum para = times_monomial(f, 2, 0) + times_monomial(f, 0, 2) +
                        scaled(times_monomial(f, 1, 0), -2.0 * cx) +
                        scaled(f, cx * cx);
        vf = vf + scaled(para, -0.5 * curv) + scaled(f, -voff);
        return vf;
    };
    const GaussSum dVL_L = delta_v_apply(fL, -half_sep);
    const GaussSum dVR_R = delta_v_apply(fR, +half_sep);

    const cdouble LL = inner(fL, dVL_L); // <L|dV_L|L>
    const cdouble RR = inner(fR, dVR_R); // <R|dV_R|R>
    const cdouble RL = inner(fR, dVL_L); // <R|dV_L|L>
    const cdouble LR = inner(fL, dVR_R); // <L|dV_R|R>

    HLDecomposition out;
    out.S_LR = S;
    // J_r = pref [ |S|^2 (<L|dV_L|L> + <R|dV_R|R>)
    //              - Re( <L|dV_R|R> conj(S) + <R|dV_L|L> S ) ]
    out.J_r = pref * (S2 * (LL.real() + RR.real()) -
                      (LR * std::conj(S) + RL * S).real());

    const cdouble c_dir = coulomb_element(L, R, L, R, mat, quad);
    const cdouble c_ex = coulomb_element(L, R, R, L, mat, quad);
    out.J_c = pref * (S2 * c_dir.real() - c_ex.real());
    out.J_total = out.J_r + out.J_c;
    return out;
}

double adiabatic_lower_bound(double gap_meV) {
    return units::hbar_meV_ps / gap_meV;
}

SwapTime swap_time(double J_meV) {
    if (std::abs(J_meV) < 1e-12) {
        throw ZeroCoupling("swap time undefined at zero exchange coupling");
    }
    SwapTime t;
    t.raw_ps = 3.14159265358979323846 * units::hbar_meV_ps / std::abs(J_meV);
    t.padded_ps = kAdiabaticPadding * t.raw_ps;
    return t;
}

double zeeman_phase_mismatch(double J_meV, double delta_B_T,
                             const MaterialParams& mat) {
    return std::abs(mat.g_factor) * units::mu_B_meV_per_T * delta_B_T / J_meV;
}

NoiseEstimate phase_noise(double R_ohm, double T_K, double alpha_eV_per_V,
                          double t_s) {
    NoiseEstimate n;
    n.R_ohm = R_ohm;
    n.T_K = T_K;
    n.alpha_eV_per_V = alpha_eV_per_V;
    n.t_s = t_s;
    const double alpha_SI = alpha_eV_per_V * units::eV_J; // J/V = C
    n.phase_var_rate = 4.0 * R_ohm * units::k_B_J_per_K * T_K * alpha_SI *
                       alpha_SI / (units::hbar_J_s * units::hbar_J_s);
    n.phase_var = n.phase_var_rate * t_s;
    return n;
}

double alpha_from_sweep(const std::vector<std::pair<double, double>>& tab) {
    if (tab.size() < 2) {
        throw DegenerateSweep("need at least two sweep points");
    }
    double mx = 0, my = 0;
    for (const auto& [vb, j] : tab) {
        mx += vb;
        my += j;
    }
    mx /= double(tab.size());
    my /= double(tab.size());
    double sxx = 0, sxy = 0;
    for (const auto& [vb, j] : tab) {
        sxx += (vb - mx) * (vb - mx);
        sxy += (vb - mx) * (j - my);
    }
    if (sxx <= 0.0) {
        throw DegenerateSweep("all Vb values in the sweep are equal");
    }
    // meV/meV equals eV/V
    return std::abs(sxy / sxx);
}

} // namespace qdmol
