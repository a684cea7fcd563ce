#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qdmol/integrals.hpp"
#include "qdmol/units.hpp"
#include "test_helpers.hpp"

using namespace qdmol;
using testutil::scales_from_l0;

namespace {
const MaterialParams gaas = MaterialParams::gaas();
constexpr double pi = 3.14159265358979323846;

// <f | h0 + (m w0^2/2)|r-c|^2 | f> for the orbital's own parabolic well
double fock_darwin_energy(const Orbital& orb, double B, double hbar_omega0) {
    FieldConfig field;
    field.B = B;
    const GaussSum f = orbital_function(orb);
    const double h2m =
        units::hbar2_over_m0_meV_nm2 / gaas.effective_mass_ratio;
    const double curv = hbar_omega0 * hbar_omega0 / h2m;
    GaussSum hf = apply_kinetic(f, gaas, field);
    GaussSum para = times_monomial(f, 2, 0) + times_monomial(f, 0, 2) +
                    scaled(times_monomial(f, 1, 0), -2.0 * orb.center) +
                    scaled(f, orb.center * orb.center);
    hf = hf + scaled(para, 0.5 * curv);
    return inner(f, hf).real();
}

} // namespace

TEST_CASE("fock-darwin eigenvalues from the closed-form kinetic action") {
    SUBCASE("zero field, displaced well") {
        const double hw0 = 9.0;
        const LengthScales s = length_scales(0.0, hw0, gaas);
        CHECK(fock_darwin_energy(make_orbital(0, -14.0, s), 0.0, hw0) ==
              doctest::Approx(hw0).epsilon(1e-10));
        CHECK(fock_darwin_energy(make_orbital(-1, -14.0, s), 0.0, hw0) ==
              doctest::Approx(2.0 * hw0).epsilon(1e-10));
        CHECK(fock_darwin_energy(make_orbital(+1, -14.0, s), 0.0, hw0) ==
              doctest::Approx(2.0 * hw0).epsilon(1e-10));
    }
    SUBCASE("finite field splits the p doublet") {
        const double hw0 = 9.0, B = 5.0;
        const LengthScales s = length_scales(B, hw0, gaas);
        const double hwc = units::hbar_omega_c(gaas.effective_mass_ratio, B);
        const double hweff = std::sqrt(hw0 * hw0 + 0.25 * hwc * hwc);
        CHECK(fock_darwin_energy(make_orbital(0, -14.0, s), B, hw0) ==
              doctest::Approx(hweff).epsilon(1e-10));
        CHECK(fock_darwin_energy(make_orbital(-1, -14.0, s), B, hw0) ==
              doctest::Approx(2.0 * hweff - 0.5 * hwc).epsilon(1e-10));
        CHECK(fock_darwin_energy(make_orbital(+1, -14.0, s), B, hw0) ==
              doctest::Approx(2.0 * hweff + 0.5 * hwc).epsilon(1e-10));
    }
}

TEST_CASE("one-body elements against the finite-difference grid oracle") {
    ConfinementPotential pot;
    pot.a = 15.0;
    pot.lx = pot.ly = 30.0;
    pot.lbx = pot.lby = 15.0;
    pot.Vb = 30.0;
    pot.V0 = calibrate_v0(pot, 30.0, 9.61);
    const ParabolaFit fit = fit_parabola_at_minima(pot, gaas);
    const LengthScales s = length_scales(0.0, fit.hbar_omega0, gaas);
    const FieldConfig field; // B = 0
    const auto orbs = make_s_basis(fit.x_min, s);
    const OneBodyMatrix ob = compute_one_body(orbs, pot, field, gaas);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const cdouble oracle = testutil::fd_expectation(
                orbs[i], orbs[j], pot, gaas, 90.0, 400);
            CHECK(std::abs(ob.h(i, j) - oracle) / std::abs(oracle) < 5e-3);
        }
    }
    // reality at zero field
    CHECK(std::abs(ob.h(0, 1).imag()) < 1e-12);
}

TEST_CASE("on-site coulomb repulsion closed form") {
    const double l0 = 11.0;
    const LengthScales s = scales_from_l0(0.0, l0, gaas);
    const Orbital a = make_orbital(0, 0.0, s);
    const cdouble v = coulomb_element(a, a, a, a, gaas);
    const double expected =
        std::sqrt(pi / 2.0) * gaas.coulomb_scale() / l0;
    CHECK(v.real() == doctest::Approx(expected).epsilon(1e-6));
    CHECK(std::abs(v.imag()) < 1e-10);

    const McEstimate mc = coulomb_oracle_mc(a, a, a, a, gaas, 200000, 12345);
    CHECK(std::abs(mc.estimate - v) < 3.0 * mc.std_error);
}

TEST_CASE("distant-dot element approaches the point-charge limit") {
    const double l0 = 10.0, a = 120.0;
    const LengthScales s = scales_from_l0(0.0, l0, gaas);
    const Orbital L = make_orbital(0, -a, s);
    const Orbital R = make_orbital(0, +a, s);
    // i,k on the left and j,l on the right
    const cdouble v = coulomb_element(L, R, L, R, gaas);
    const double point = gaas.coulomb_scale() / (2.0 * a);
    CHECK(std::abs(v.real() - point) / point < 5e-3);
}

TEST_CASE("angular selection rule at a single dot") {
    const LengthScales s = scales_from_l0(0.0, 11.0, gaas);
    const Orbital ss = make_orbital(0, 0.0, s);
    const Orbital pp = make_orbital(+1, 0.0, s);
    const cdouble v = coulomb_element(ss, ss, ss, pp, gaas);
    CHECK(std::abs(v) < 1e-6 * gaas.coulomb_scale() / 11.0);
    const McEstimate mc = coulomb_oracle_mc(ss, ss, ss, pp, gaas, 100000, 4242);
    CHECK(std::abs(mc.estimate - v) < 3.0 * mc.std_error);
}

TEST_CASE("monte carlo error scales like 1/sqrt(n)") {
    const LengthScales s = scales_from_l0(0.0, 11.0, gaas);
    const Orbital L = make_orbital(0, -12.0, s);
    const Orbital R = make_orbital(0, +12.0, s);
    const McEstimate e1 = coulomb_oracle_mc(L, R, R, L, gaas, 50000, 7);
    const McEstimate e2 = coulomb_oracle_mc(L, R, R, L, gaas, 200000, 7);
    const double ratio = e1.std_error / e2.std_error;
    CHECK(ratio > 1.5);
    CHECK(ratio < 2.7);
}

TEST_CASE("quadrature elements match the MC oracle over random quadruples") {
    const double B = 5.0;
    const LengthScales s = scales_from_l0(B, 11.0, gaas);
    const FieldConfig field{B, false, 0.0, 0.0};
    const auto orbs = make_sp_basis(14.0, s, field);
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> pick(0, int(orbs.size()) - 1);
    int checked = 0;
    while (checked < 20) {
        const int i = pick(rng), j = pick(rng), k = pick(rng), l = pick(rng);
        const cdouble det =
            coulomb_element(orbs[i], orbs[j], orbs[k], orbs[l], gaas);
        const McEstimate mc = coulomb_oracle_mc(orbs[i], orbs[j], orbs[k],
                                                orbs[l], gaas, 150000,
                                                1000 + checked);
        CHECK(std::abs(mc.estimate - det) < 3.0 * mc.std_error);
        ++checked;
    }
}

TEST_CASE("coulomb symmetries hold for independently evaluated elements") {
    const double B = 3.0;
    const LengthScales s = scales_from_l0(B, 11.0, gaas);
    const FieldConfig field{B, false, 0.0, 0.0};
    const auto orbs = make_sp_basis(14.0, s, field);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> pick(0, int(orbs.size()) - 1);
    for (int t = 0; t < 6; ++t) {
        const int i = pick(rng), j = pick(rng), k = pick(rng), l = pick(rng);
        const cdouble v = coulomb_element(orbs[i], orbs[j], orbs[k], orbs[l], gaas);
        const cdouble swap =
            coulomb_element(orbs[j], orbs[i], orbs[l], orbs[k], gaas);
        const cdouble herm =
            coulomb_element(orbs[k], orbs[l], orbs[i], orbs[j], gaas);
        const double scale = std::max(1e-4, std::abs(v));
        CHECK(std::abs(v - swap) / scale < 1e-6);
        CHECK(std::abs(v - std::conj(herm)) / scale < 1e-6);
    }
}

TEST_CASE("zero-field elements are real") {
    const LengthScales s = scales_from_l0(0.0, 11.0, gaas);
    const auto orbs = make_sp_basis(14.0, s);
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> pick(0, int(orbs.size()) - 1);
    for (int t = 0; t < 8; ++t) {
        const cdouble v = coulomb_element(orbs[pick(rng)], orbs[pick(rng)],
                                          orbs[pick(rng)], orbs[pick(rng)], gaas);
        CHECK(std::abs(v.imag()) <= 1e-10 * std::max(1.0, std::abs(v.real())));
    }
}

TEST_CASE("tensor storage honors the symmetry group") {
    const double B = 4.0;
    const LengthScales s = scales_from_l0(B, 11.0, gaas);
    const FieldConfig field{B, false, 0.0, 0.0};
    const auto orbs = make_s_basis(13.0, s, field);
    const CoulombTensor t = compute_coulomb_tensor(orbs, gaas, {}, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    CHECK(std::abs(t(i, j, k, l) - t(j, i, l, k)) < 1e-14);
                    CHECK(std::abs(t(i, j, k, l) - std::conj(t(k, l, i, j))) <
                          1e-14);
                }
}

TEST_CASE("unique element enumeration") {
    CHECK(enumerate_unique_elements(21, false, Sector::singlet).size() == 231);
    CHECK(enumerate_unique_elements(15, false, Sector::triplet).size() == 120);
    CHECK(enumerate_unique_elements(21, true, Sector::singlet).size() == 123);
    CHECK(enumerate_unique_elements(15, true, Sector::triplet).size() == 66);
    // Hund-Mulliken counts
    CHECK(enumerate_unique_elements(3, false, Sector::singlet).size() +
              enumerate_unique_elements(1, false, Sector::triplet).size() ==
          7);
    CHECK(enumerate_unique_elements(3, true, Sector::singlet).size() +
              enumerate_unique_elements(1, true, Sector::triplet).size() ==
          5);
}
