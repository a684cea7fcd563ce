#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "qdmol/basis.hpp"
#include "qdmol/gauss2d.hpp"
#include "qdmol/model.hpp"
#include "qdmol/units.hpp"

namespace testutil {

using qdmol::cdouble;

// tensor-product Gauss-Legendre quadrature over [cx-h,cx+h] x [cy-h,cy+h],
// independent of the closed-form integration path
inline cdouble quad2d(const std::function<cdouble(double, double)>& f,
                      double cx, double cy, double half, int n = 96) {
    static const double gl_x[8] = {
        -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
        -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
        0.7966664774136267,  0.9602898564975363};
    static const double gl_w[8] = {
        0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
        0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
        0.2223810344533745, 0.1012285362903763};
    const int panels = n / 8;
    const double dx = 2.0 * half / panels;
    cdouble acc{0.0, 0.0};
    for (int px = 0; px < panels; ++px) {
        const double x0 = cx - half + px * dx;
        for (int qx = 0; qx < 8; ++qx) {
            const double x = x0 + 0.5 * dx * (1.0 + gl_x[qx]);
            const double wx = 0.5 * dx * gl_w[qx];
            for (int py = 0; py < panels; ++py) {
                const double y0 = cy - half + py * dx;
                for (int qy = 0; qy < 8; ++qy) {
                    const double y = y0 + 0.5 * dx * (1.0 + gl_x[qy]);
                    acc += wx * 0.5 * dx * gl_w[qy] * f(x, y);
                }
            }
        }
    }
    return acc;
}

// scales with a prescribed orbital radius l0 at field B
inline qdmol::LengthScales scales_from_l0(double B, double l0,
                                          const qdmol::MaterialParams& mat) {
    const double h2m =
        qdmol::units::hbar2_over_m0_meV_nm2 / mat.effective_mass_ratio;
    const double hw_eff = h2m / (l0 * l0);
    const double hwc = qdmol::units::hbar_omega_c(mat.effective_mass_ratio, B);
    const double hw0 = std::sqrt(std::max(1e-12, hw_eff * hw_eff - 0.25 * hwc * hwc));
    return qdmol::length_scales(B, hw0, mat);
}

// second-order finite-difference expectation value <f|T+V|g> on a uniform
// grid; B=0 only.  Independent oracle for the closed-form one-body path.
inline cdouble fd_expectation(const qdmol::Orbital& a, const qdmol::Orbital& b,
                              const qdmol::ConfinementPotential& pot,
                              const qdmol::MaterialParams& mat, double half,
                              int n) {
    const double h = 2.0 * half / (n - 1);
    const double kf = qdmol::units::kinetic_factor(mat.effective_mass_ratio);
    std::vector<cdouble> fb(std::size_t(n) * n);
    std::vector<cdouble> fa(std::size_t(n) * n);
    for (int i = 0; i < n; ++i) {
        const double x = -half + i * h;
        for (int j = 0; j < n; ++j) {
            const double y = -half + j * h;
            fa[std::size_t(i) * n + j] = qdmol::eval_orbital(a, x, y);
            fb[std::size_t(i) * n + j] = qdmol::eval_orbital(b, x, y);
        }
    }
    cdouble acc{0.0, 0.0};
    for (int i = 1; i + 1 < n; ++i) {
        const double x = -half + i * h;
        for (int j = 1; j + 1 < n; ++j) {
            const double y = -half + j * h;
            const std::size_t c = std::size_t(i) * n + j;
            const cdouble lap = (fb[c - n] + fb[c + n] + fb[c - 1] + fb[c + 1] -
                                 4.0 * fb[c]) /
                                (h * h);
            const cdouble hf =
                -kf * lap + qdmol::evaluate_potential(pot, x, y) * fb[c];
            acc += std::conj(fa[c]) * hf * h * h;
        }
    }
    return acc;
}

} // namespace testutil
