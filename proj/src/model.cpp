#include "qdmol/model.hpp"

#include <algorithm>
#include <cmath>

#include "qdmol/errors.hpp"
#include "qdmol/units.hpp"

namespace qdmol {

double MaterialParams::coulomb_scale() const {
    return units::coulomb_meV_nm / dielectric_const;
}

double evaluate_potential(const ConfinementPotential& p, double x, double y) {
    const double gx1 = std::exp(-(x - p.a) * (x - p.a) / (p.lx * p.lx));
    const double gx2 = std::exp(-(x + p.a) * (x + p.a) / (p.lx * p.lx));
    const double gy = std::exp(-y * y / (p.ly * p.ly));
    const double bx = std::exp(-x * x / (p.lbx * p.lbx));
    const double by = std::exp(-y * y / (p.lby * p.lby));
    return p.V0 * (gx1 + gx2) * gy + p.Vb * bx * by;
}

double potential_dx(const ConfinementPotential& p, double x, double y) {
    const double gx1 = std::exp(-(x - p.a) * (x - p.a) / (p.lx * p.lx));
    const double gx2 = std::exp(-(x + p.a) * (x + p.a) / (p.lx * p.lx));
    const double gy = std::exp(-y * y / (p.ly * p.ly));
    const double bx = std::exp(-x * x / (p.lbx * p.lbx));
    const double by = std::exp(-y * y / (p.lby * p.lby));
    const double dwell = p.V0 * gy *
                         (-2.0 * (x - p.a) / (p.lx * p.lx) * gx1 -
                          2.0 * (x + p.a) / (p.lx * p.lx) * gx2);
    const double dbar = p.Vb * by * (-2.0 * x / (p.lbx * p.lbx)) * bx;
    return dwell + dbar;
}

std::pair<double, double> potential_hessian(const ConfinementPotential& p,
                                            double x, double y) {
    auto d2 = [](double u, double l2) {
        // second derivative factor of exp(-u^2/l2)
        return 4.0 * u * u / (l2 * l2) - 2.0 / l2;
    };
    const double lx2 = p.lx * p.lx, ly2 = p.ly * p.ly;
    const double lbx2 = p.lbx * p.lbx, lby2 = p.lby * p.lby;
    const double gx1 = std::exp(-(x - p.a) * (x - p.a) / lx2);
    const double gx2 = std::exp(-(x + p.a) * (x + p.a) / lx2);
    const double gy = std::exp(-y * y / ly2);
    const double bx = std::exp(-x * x / lbx2);
    const double by = std::exp(-y * y / lby2);

    const double vxx = p.V0 * gy * (gx1 * d2(x - p.a, lx2) + gx2 * d2(x + p.a, lx2)) +
                       p.Vb * by * bx * d2(x, lbx2);
    const double vyy = p.V0 * (gx1 + gx2) * gy * d2(y, ly2) +
                       p.Vb * bx * by * d2(y, lby2);
    return {vxx, vyy};
}

double find_minimum_x(const ConfinementPotential& pot) {
    const double xmax = pot.a + 4.0 * pot.lx;
    const int n = 4096;
    double best_x = 0.0, best_v = evaluate_potential(pot, 0.0, 0.0);
    for (int i = 0; i <= n; ++i) {
        const double x = xmax * i / n;
        const double v = evaluate_potential(pot, x, 0.0);
        if (v < best_v) {
            best_v = v;
            best_x = x;
        }
    }
    const double dx = xmax / n;
    if (best_x < dx) {
        throw NoDoubleWell("potential cut along y=0 has a single central minimum");
    }
    // bisection on dV/dx around the sampled minimum
    double lo = std::max(0.0, best_x - dx), hi = best_x + dx;
    if (potential_dx(pot, lo, 0.0) > 0.0 || potential_dx(pot, hi, 0.0) < 0.0) {
        // fall back to golden-section if the bracket is not clean
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = lo, b = hi;
        double c = b - phi * (b - a), d = a + phi * (b - a);
        for (int it = 0; it < 200; ++it) {
            if (evaluate_potential(pot, c, 0.0) < evaluate_potential(pot, d, 0.0))
                b = d;
            else
                a = c;
            c = b - phi * (b - a);
            d = a + phi * (b - a);
        }
        return 0.5 * (a + b);
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (potential_dx(pot, mid, 0.0) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double effective_barrier(const ConfinementPotential& pot) {
    const double xmin = find_minimum_x(pot);
    const double barrier =
        evaluate_potential(pot, 0.0, 0.0) - evaluate_potential(pot, xmin, 0.0);
    if (barrier <= 0.0) {
        throw NoDoubleWell("no saddle above the well minima");
    }
    return barrier;
}

ParabolaFit fit_parabola_at_minima(const ConfinementPotential& pot,
                                   const MaterialParams& mat) {
    const double xmin = find_minimum_x(pot);
    auto [vxx, vyy] = potential_hessian(pot, xmin, 0.0);
    if (vxx <= 0.0 || vyy <= 0.0) {
        throw NoDoubleWell("well minimum has non-positive curvature");
    }
    const double curv = std::sqrt(vxx * vyy); // meV/nm^2
    const double hw0 = std::sqrt(units::hbar2_over_m0_meV_nm2 /
                                 mat.effective_mass_ratio * curv);
    return {hw0, xmin};
}

double calibrate_v0(ConfinementPotential shape, double Vb,
                    double target_barrier_meV, double tol_meV) {
    shape.Vb = Vb;
    auto barrier_at = [&](double v0) -> double {
        shape.V0 = v0;
        try {
            return effective_barrier(shape);
        } catch (const NoDoubleWell&) {
            // merged wells behave like an arbitrarily low barrier for the
            // bracketing logic
            return -1e9;
        }
    };
    // barrier is monotone increasing in V0 on the double-well branch
    double lo = -400.0, hi = -1e-3;
    if (barrier_at(lo) > target_barrier_meV ||
        barrier_at(hi) < target_barrier_meV) {
        throw NoDoubleWell("target barrier not bracketed by V0 in [-400, 0]");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double b = barrier_at(mid);
        if (std::abs(b - target_barrier_meV) < tol_meV) return mid;
        if (b < target_barrier_meV)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<CalibrationRow>
calibrate_barriers(ConfinementPotential shape, const std::vector<double>& Vb,
                   const std::vector<double>& target_barrier_meV) {
    std::vector<CalibrationRow> rows;
    rows.reserve(Vb.size());
    for (std::size_t i = 0; i < Vb.size(); ++i) {
        CalibrationRow row;
        row.Vb = Vb[i];
        row.V0 = calibrate_v0(shape, Vb[i], target_barrier_meV[i]);
        shape.Vb = Vb[i];
        shape.V0 = row.V0;
        row.eff_barrier = effective_barrier(shape);
        rows.push_back(row);
    }
    return rows;
}

ValidityRatios envelope_validity(const MaterialParams& mat, double E_bar_meV,
                                 double V_bar_meV) {
    const double Eg = mat.band_gap_Eg;
    const double p = mat.interband_coupling_Ep * (E_bar_meV * 1e-3) *
                     mat.effective_mass_ratio / (Eg * Eg);
    const double pp = mat.interband_coupling_Ep * mat.so_splitting_Delta *
                      (V_bar_meV * 1e-3) * mat.effective_mass_ratio /
                      (Eg * Eg * Eg);
    return {p, pp};
}

double zeeman_splitting(const MaterialParams& mat, double B) {
    return std::abs(mat.g_factor) * units::mu_B_meV_per_T * B;
}

} // namespace qdmol
