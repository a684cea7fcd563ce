#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "qdmol/errors.hpp"
#include "qdmol/mo_solver.hpp"
#include "qdmol/units.hpp"
#include "test_helpers.hpp"

using namespace qdmol;
using testutil::scales_from_l0;

namespace {
const MaterialParams gaas = MaterialParams::gaas();

ConfinementPotential calibrated_pot(double a, double Vb, double target) {
    ConfinementPotential pot;
    pot.a = a;
    pot.lx = pot.ly = 30.0;
    pot.lbx = pot.lby = 15.0;
    pot.Vb = Vb;
    pot.V0 = calibrate_v0(pot, Vb, target);
    return pot;
}

MoInput standard_input(const ConfinementPotential& pot, double B,
                       BasisLevel level, bool parity) {
    MoInput in;
    in.mat = gaas;
    in.pot = pot;
    in.field.B = B;
    in.level = level;
    in.use_parity = parity;
    const ParabolaFit fit = fit_parabola_at_minima(pot, gaas);
    in.hbar_omega0 = fit.hbar_omega0;
    in.half_sep = fit.x_min;
    in.n_threads = 2;
    return in;
}

} // namespace

TEST_CASE("two-electron state counts") {
    CHECK(build_two_electron_basis(2, Sector::singlet, BasisLevel::hm).size() == 3);
    CHECK(build_two_electron_basis(2, Sector::triplet, BasisLevel::hm).size() == 1);
    CHECK(build_two_electron_basis(6, Sector::singlet, BasisLevel::sp).size() == 21);
    CHECK(build_two_electron_basis(6, Sector::triplet, BasisLevel::sp).size() == 15);
    CHECK(build_two_electron_basis(2, Sector::singlet, BasisLevel::hl).size() == 1);

    const std::vector<Parity> par6 = {Parity::even, Parity::even, Parity::even,
                                      Parity::odd, Parity::odd, Parity::odd};
    auto count = [&](Sector s, Parity p) {
        int c = 0;
        for (const auto& st : build_two_electron_basis(par6, s, BasisLevel::sp))
            if (st.parity == p) ++c;
        return c;
    };
    CHECK(count(Sector::singlet, Parity::even) == 12);
    CHECK(count(Sector::singlet, Parity::odd) == 9);
    CHECK(count(Sector::triplet, Parity::even) == 6);
    CHECK(count(Sector::triplet, Parity::odd) == 9);
}

TEST_CASE("generalized eigensolve closed forms") {
    SUBCASE("identity overlap reduces to the ordinary problem") {
        AssembledSystem sys;
        sys.H.resize(2, 2);
        sys.H << 2.0, 0.5, 0.5, 1.0;
        sys.S = Eigen::MatrixXcd::Identity(2, 2);
        const auto res = solve_generalized(sys, {}, Sector::singlet);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sys.H);
        CHECK(res.energies(0) == doctest::Approx(es.eigenvalues()(0)));
        CHECK(res.energies(1) == doctest::Approx(es.eigenvalues()(1)));
    }
    SUBCASE("2x2 analytic overlap case") {
        const double delta = 0.7, s = 0.3;
        AssembledSystem sys;
        sys.H.resize(2, 2);
        sys.H << 0.0, delta, delta, 0.0;
        sys.S.resize(2, 2);
        sys.S << 1.0, s, s, 1.0;
        const auto res = solve_generalized(sys, {}, Sector::singlet);
        CHECK(res.energies(0) == doctest::Approx(-delta / (1.0 - s)));
        CHECK(res.energies(1) == doctest::Approx(delta / (1.0 + s)));
    }
    SUBCASE("singular overlap raises") {
        AssembledSystem sys;
        sys.H = Eigen::MatrixXcd::Identity(2, 2);
        sys.S.resize(2, 2);
        sys.S << 1.0, 1.0, 1.0, 1.0;
        CHECK_THROWS_AS(solve_generalized(sys, {}, Sector::singlet),
                        SingularOverlap);
    }
}

TEST_CASE("helium-like single orbital assembly") {
    const LengthScales s = scales_from_l0(0.0, 10.0, gaas);
    ConfinementPotential pot;
    pot.a = 0.0;
    pot.Vb = 0.0;
    pot.V0 = -60.0;
    pot.lx = pot.ly = 25.0;
    const std::vector<Orbital> orbs = {make_orbital(0, 0.0, s)};
    const OneBodyMatrix ob = compute_one_body(orbs, pot, {}, gaas);
    const CoulombTensor ct = compute_coulomb_tensor(orbs, gaas);
    std::vector<TwoElectronState> states = {{0, 0, Sector::singlet, {}, 1.0}};
    const auto sys = assemble(states, ob, ct);
    const auto res = solve_generalized(sys, states, Sector::singlet);
    const double expected = 2.0 * ob.h(0, 0).real() + ct(0, 0, 0, 0).real();
    CHECK(res.energies(0) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("hund-mulliken block structure and ground state ordering") {
    const ConfinementPotential pot = calibrated_pot(15.0, 30.0, 9.61);
    const MoInput in = standard_input(pot, 0.0, BasisLevel::hm, false);
    const MoIntegrals ints = compute_mo_integrals(in);
    const auto states = build_two_electron_basis(2, Sector::singlet, in.level);
    const auto sys = assemble(states, ints.one_body, ints.coulomb);
    for (int i = 0; i < sys.H.rows(); ++i)
        for (int j = 0; j < sys.H.cols(); ++j) {
            CHECK(std::abs(sys.H(i, j).imag()) < 1e-10);
            CHECK(std::abs(sys.H(i, j) - std::conj(sys.H(j, i))) < 1e-12);
        }
    const MoResult mo = mo_solve_with(in, ints);
    CHECK(mo.J > 0.0); // singlet ground state at zero field
    const auto& res = mo.singlet;
    for (int k = 0; k < res.energies.size(); ++k) {
        const auto c = res.coefficients.col(k);
        CHECK(std::abs((c.adjoint() * res.S * c)(0, 0).real() - 1.0) < 1e-10);
    }
}

TEST_CASE("decoupled dots: degenerate sectors and empty polar weight") {
    ConfinementPotential pot;
    pot.a = 120.0;
    pot.lx = pot.ly = 30.0;
    pot.Vb = 0.0;
    pot.V0 = -50.0;
    MoInput in = standard_input(pot, 0.0, BasisLevel::hm, false);
    const MoResult mo = mo_solve(in);
    CHECK(std::abs(mo.J) < 1e-6);
    CHECK(mo.P_double < 1e-6);
}

TEST_CASE("loewdin weight reduces to the plain amplitude at unit overlap") {
    SpectrumResult res;
    res.S = Eigen::MatrixXcd::Identity(3, 3);
    res.coefficients = Eigen::MatrixXcd::Zero(3, 3);
    res.coefficients(0, 0) = std::sqrt(0.91);
    res.coefficients(1, 0) = std::sqrt(0.06);
    res.coefficients(2, 0) = std::sqrt(0.03);
    CHECK(double_occupation(res, 1) == doctest::Approx(0.06).epsilon(1e-12));
}

TEST_CASE("parity toggle leaves the spectrum unchanged") {
    const ConfinementPotential pot = calibrated_pot(15.0, 25.0, 6.28);
    for (double B : {0.0, 3.0}) {
        MoInput in = standard_input(pot, B, BasisLevel::sp, false);
        const MoIntegrals ints = compute_mo_integrals(in);
        const MoResult plain = mo_solve_with(in, ints);
        in.use_parity = true;
        const MoResult blocked = mo_solve_with(in, ints);
        REQUIRE(plain.all_energies.size() == blocked.all_energies.size());
        for (std::size_t k = 0; k < plain.all_energies.size(); ++k) {
            const double scale = std::max(1.0, std::abs(plain.all_energies[k]));
            CHECK(std::abs(plain.all_energies[k] - blocked.all_energies[k]) /
                      scale <
                  1e-8);
        }
        CHECK(plain.J == doctest::Approx(blocked.J).epsilon(1e-7));
    }
}

TEST_CASE("even and odd two-electron states do not couple") {
    const ConfinementPotential pot = calibrated_pot(15.0, 30.0, 9.61);
    const MoInput in = standard_input(pot, 4.0, BasisLevel::sp, false);
    const MoIntegrals ints = compute_mo_integrals(in);
    const auto combos = parity_symmetrize(ints.orbitals);
    Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(6, 6);
    std::vector<Parity> par(6);
    for (std::size_t p = 0; p < combos.size(); ++p) {
        par[p] = combos[p].parity;
        for (const auto& [idx, c] : combos[p].parts) U(int(p), idx) = c;
    }
    OneBodyMatrix ob;
    ob.h = U.conjugate() * ints.one_body.h * U.transpose();
    ob.s = U.conjugate() * ints.one_body.s * U.transpose();
    const CoulombTensor ct = ints.coulomb.transformed(U);
    const auto states = build_two_electron_basis(par, Sector::singlet,
                                                 BasisLevel::sp);
    const auto sys = assemble(states, ob, ct);
    for (std::size_t x = 0; x < states.size(); ++x)
        for (std::size_t y = 0; y < states.size(); ++y)
            if (states[x].parity != states[y].parity) {
                CHECK(std::abs(sys.H(int(x), int(y))) < 1e-8);
                CHECK(std::abs(sys.S(int(x), int(y))) < 1e-10);
            }
}

TEST_CASE("s-p basis lowers the ground singlet") {
    const ConfinementPotential pot = calibrated_pot(15.0, 20.0, 3.38);
    const MoInput hm = standard_input(pot, 0.0, BasisLevel::hm, false);
    const MoInput sp = standard_input(pot, 0.0, BasisLevel::sp, true);
    const MoResult rhm = mo_solve(hm);
    const MoResult rsp = mo_solve(sp);
    CHECK(rsp.singlet.energies(0) <= rhm.singlet.energies(0) + 1e-8);
    CHECK(rsp.J > 0.0);
}

TEST_CASE("exchange decays exponentially with separation") {
    std::vector<double> seps = {30.0, 35.0, 40.0, 45.0};
    std::vector<double> logj;
    for (double d : seps) {
        ConfinementPotential pot;
        pot.a = d / 2.0;
        pot.lx = pot.ly = 30.0;
        pot.lbx = pot.lby = 15.0;
        pot.Vb = 20.0;
        pot.V0 = -50.0;
        const MoInput in = standard_input(pot, 0.0, BasisLevel::hm, false);
        const MoResult mo = mo_solve(in);
        REQUIRE(mo.J > 0.0);
        logj.push_back(std::log(mo.J));
    }
    for (std::size_t k = 1; k < logj.size(); ++k) CHECK(logj[k] < logj[k - 1]);
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < seps.size(); ++k) {
        mx += seps[k];
        my += logj[k];
    }
    mx /= seps.size();
    my /= seps.size();
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t k = 0; k < seps.size(); ++k) {
        sxx += (seps[k] - mx) * (seps[k] - mx);
        sxy += (seps[k] - mx) * (logj[k] - my);
        syy += (logj[k] - my) * (logj[k] - my);
    }
    const double r2 = sxy * sxy / (sxx * syy);
    CHECK(r2 > 0.98);
}

TEST_CASE("reduced density matrix purity dichotomy") {
    // one-particle purity of a two-fermion spin-orbital Slater determinant,
    // from the Gram matrix of the occupied spin-orbitals:
    //   Tr rho_1^2 = (2 + 2 |S_spatial * S_spin|^2) / 4
    const LengthScales s = scales_from_l0(0.0, 11.0, gaas);
    auto det_purity = [&](const Orbital& f, const Orbital& g,
                          cdouble spin_overlap) {
        const cdouble gram = overlap(f, g) * spin_overlap;
        return 0.25 * (2.0 + 2.0 * std::norm(gram));
    };
    // opposite-spin determinant: mixed one-particle state regardless of
    // how strongly the spatial parts overlap
    const Orbital a = make_orbital(0, -8.0, s);
    const Orbital b = make_orbital(+1, -8.0, s);
    CHECK(det_purity(a, b, cdouble{0.0, 0.0}) == doctest::Approx(0.5));
    const Orbital c = make_orbital(0, -200.0, s);
    const Orbital d = make_orbital(0, +200.0, s);
    CHECK(det_purity(c, d, cdouble{0.0, 0.0}) == doctest::Approx(0.5));
    CHECK(std::abs(overlap(c, d)) < 1e-12);
    // spatially disjoint electrons admit the distinguishable-product
    // description: each particle then sits in a single pure spin-orbital
    auto product_purity = [](double weight) { return weight * weight; };
    CHECK(product_purity(1.0) == doctest::Approx(1.0));
}
