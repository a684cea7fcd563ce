#include "qdmol/basis.hpp"

#include <cmath>
#include <limits>

#include "qdmol/errors.hpp"
#include "qdmol/units.hpp"

namespace qdmol {

namespace {
constexpr double pi = 3.14159265358979323846;
}

LengthScales length_scales(double B, double hbar_omega0,
                           const MaterialParams& mat) {
    LengthScales s;
    s.hbar_omega0 = hbar_omega0;
    s.hbar_omega_c = units::hbar_omega_c(mat.effective_mass_ratio, B);
    s.hbar_omega_eff = std::sqrt(hbar_omega0 * hbar_omega0 +
                                 0.25 * s.hbar_omega_c * s.hbar_omega_c);
    const double h2m = units::hbar2_over_m0_meV_nm2 / mat.effective_mass_ratio;
    // l0^2 = hbar/(m Omega) = (hbar^2/m) / (hbar Omega)
    s.l0 = std::sqrt(h2m / s.hbar_omega_eff);
    s.inv_two_lB2 = units::inv_two_lB2(B);
    s.lB = B > 0.0 ? std::sqrt(units::lB2_nm2_at_1T / B)
                   : std::numeric_limits<double>::infinity();
    return s;
}

Orbital make_orbital(int m, double center, const LengthScales& scales,
                     const FieldConfig& field) {
    Orbital o;
    o.center = center;
    o.m = m;
    o.l0 = scales.l0;
    o.lB = scales.lB;
    // magnetic translation phase for symmetric gauge anchored at g:
    // theta(r) = -k2 [ g_y x + (c - g_x) y ], k2 = 1/(2 lB^2)
    const double k2 = scales.inv_two_lB2;
    o.phase_kx = -k2 * field.gauge_center_y;
    o.phase_ky = -k2 * (center - field.gauge_center_x);
    return o;
}

std::vector<Orbital> make_s_basis(double half_sep, const LengthScales& scales,
                                  const FieldConfig& field) {
    return {make_orbital(0, -half_sep, scales, field),
            make_orbital(0, +half_sep, scales, field)};
}

std::vector<Orbital> make_sp_basis(double half_sep, const LengthScales& scales,
                                   const FieldConfig& field) {
    return {make_orbital(0, -half_sep, scales, field),
            make_orbital(0, +half_sep, scales, field),
            make_orbital(-1, -half_sep, scales, field),
            make_orbital(-1, +half_sep, scales, field),
            make_orbital(+1, -half_sep, scales, field),
            make_orbital(+1, +half_sep, scales, field)};
}

GaussSum orbital_function(const Orbital& orb) {
    const double alpha = 1.0 / (2.0 * orb.l0 * orb.l0);
    GaussTerm base;
    base.ax = base.ay = alpha;
    base.cx = orb.center;
    base.cy = 0.0;
    base.kx = orb.phase_kx;
    base.ky = orb.phase_ky;
    if (orb.m == 0) {
        base.coef = 1.0 / (std::sqrt(pi) * orb.l0);
        return {base};
    }
    // p orbital: ((x-c) + i m y) / (sqrt(pi) l0^2) times the gaussian
    const double norm = 1.0 / (std::sqrt(pi) * orb.l0 * orb.l0);
    GaussSum f;
    GaussTerm tx = base;
    tx.coef = norm;
    tx.px = 1;
    f.push_back(tx);
    GaussTerm tc = base;
    tc.coef = -orb.center * norm;
    f.push_back(tc);
    GaussTerm ty = base;
    ty.coef = cdouble{0.0, double(orb.m)} * norm;
    ty.py = 1;
    f.push_back(ty);
    return f;
}

cdouble eval_orbital(const Orbital& orb, double x, double y) {
    return eval(orbital_function(orb), x, y);
}

cdouble overlap(const Orbital& a, const Orbital& b) {
    return inner(orbital_function(a), orbital_function(b));
}

std::vector<OrbitalCombo> parity_symmetrize(const std::vector<Orbital>& orbs) {
    const int n = int(orbs.size());
    std::vector<bool> used(n, false);
    std::vector<OrbitalCombo> out;
    for (int i = 0; i < n; ++i) {
        if (used[i]) continue;
        const Orbital& oi = orbs[i];
        if (std::abs(oi.center) < 1e-12) {
            // centered orbital is its own mirror image
            used[i] = true;
            OrbitalCombo c;
            c.parts = {{i, 1.0}};
            c.parity = (oi.m == 0) ? Parity::even : Parity::odd;
            out.push_back(c);
            continue;
        }
        int partner = -1;
        for (int j = i + 1; j < n; ++j) {
            if (used[j]) continue;
            const Orbital& oj = orbs[j];
            if (oj.n == oi.n && oj.m == oi.m &&
                std::abs(oj.center + oi.center) < 1e-9 &&
                std::abs(oj.l0 - oi.l0) < 1e-12) {
                partner = j;
                break;
            }
        }
        if (partner < 0) {
            throw UnpairedOrbital("orbital has no mirror partner about x=0");
        }
        used[i] = used[partner] = true;
        const double sigma = (std::abs(oi.m) % 2 == 0) ? 1.0 : -1.0;
        const cdouble s = overlap(orbs[i], orbs[partner]);
        for (int parity = 0; parity < 2; ++parity) {
            const double sign = parity == 0 ? 1.0 : -1.0;
            const double nrm2 = 2.0 + 2.0 * sign * sigma * s.real();
            OrbitalCombo c;
            const double nn = 1.0 / std::sqrt(nrm2);
            c.parts = {{i, nn}, {partner, sign * sigma * nn}};
            c.parity = parity == 0 ? Parity::even : Parity::odd;
            out.push_back(c);
        }
    }
    return out;
}

} // namespace qdmol
