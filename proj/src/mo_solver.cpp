#include "qdmol/mo_solver.hpp"

#include <algorithm>
#include <cmath>

#include "qdmol/errors.hpp"
#include "qdmol/units.hpp"

namespace qdmol {

namespace {

void check_overlap(const Eigen::MatrixXcd& S) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S,
                                                       Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < 1e-10) {
        throw SingularOverlap("two-electron overlap matrix is near singular");
    }
}

struct ProductTerm {
    int p, q;
    double sign;
};

// expansion of an (anti)symmetrized state into plain products
std::vector<ProductTerm> expand(const TwoElectronState& st) {
    if (st.i == st.j) return {{st.i, st.j, 1.0}};
    const double eta = st.sector == Sector::singlet ? 1.0 : -1.0;
    return {{st.i, st.j, 1.0}, {st.j, st.i, eta}};
}

} // namespace

std::vector<TwoElectronState> build_two_electron_basis(int n_orbitals,
                                                       Sector sector,
                                                       BasisLevel level) {
    std::vector<TwoElectronState> out;
    if (level == BasisLevel::hl) {
        // Heitler-London keeps only the singly-occupied (L,R) product
        TwoElectronState st;
        st.i = 0;
        st.j = 1;
        st.sector = sector;
        st.norm_factor = 1.0 / std::sqrt(2.0);
        out.push_back(st);
        return out;
    }
    for (int i = 0; i < n_orbitals; ++i) {
        for (int j = i; j < n_orbitals; ++j) {
            if (sector == Sector::triplet && i == j) continue;
            TwoElectronState st;
            st.i = i;
            st.j = j;
            st.sector = sector;
            st.norm_factor = (i == j) ? 1.0 : 1.0 / std::sqrt(2.0);
            out.push_back(st);
        }
    }
    return out;
}

std::vector<TwoElectronState>
build_two_electron_basis(const std::vector<Parity>& orbital_parity,
                         Sector sector, BasisLevel level) {
    auto states = build_two_electron_basis(int(orbital_parity.size()), sector,
                                           level);
    for (auto& st : states) {
        const bool even = orbital_parity[st.i] == orbital_parity[st.j];
        st.parity = even ? Parity::even : Parity::odd;
    }
    // even block first, stable within blocks
    std::stable_sort(states.begin(), states.end(),
                     [](const TwoElectronState& a, const TwoElectronState& b) {
                         return a.parity < b.parity;
                     });
    return states;
}

AssembledSystem assemble(const std::vector<TwoElectronState>& states,
                         const OneBodyMatrix& one_body,
                         const CoulombTensor& coulomb) {
    const int n = int(states.size());
    AssembledSystem sys;
    sys.H.resize(n, n);
    sys.S.resize(n, n);
    const auto& h = one_body.h;
    const auto& s = one_body.s;
    for (int x = 0; x < n; ++x) {
        const auto bx = expand(states[x]);
        for (int y = x; y < n; ++y) {
            const auto by = expand(states[y]);
            cdouble Hxy{0.0, 0.0}, Sxy{0.0, 0.0};
            for (const auto& b1 : bx) {
                for (const auto& b2 : by) {
                    const double w = b1.sign * b2.sign;
                    Hxy += w * (h(b1.p, b2.p) * s(b1.q, b2.q) +
                                s(b1.p, b2.p) * h(b1.q, b2.q) +
                                coulomb(b1.p, b1.q, b2.p, b2.q));
                    Sxy += w * s(b1.p, b2.p) * s(b1.q, b2.q);
                }
            }
            const double nn = states[x].norm_factor * states[y].norm_factor;
            sys.H(x, y) = nn * Hxy;
            sys.S(x, y) = nn * Sxy;
            if (y > x) {
                sys.H(y, x) = std::conj(sys.H(x, y));
                sys.S(y, x) = std::conj(sys.S(x, y));
            }
        }
    }
    check_overlap(sys.S);
    return sys;
}

SpectrumResult solve_generalized(const AssembledSystem& sys,
                                 const std::vector<TwoElectronState>& states,
                                 Sector sector) {
    check_overlap(sys.S);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> ges(
        sys.H, sys.S, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    SpectrumResult out;
    out.energies = ges.eigenvalues();
    out.coefficients = ges.eigenvectors();
    // enforce c^dag S c = 1 per column
    for (int k = 0; k < out.coefficients.cols(); ++k) {
        auto c = out.coefficients.col(k);
        const double nrm =
            std::sqrt(std::abs((c.adjoint() * sys.S * c)(0, 0).real()));
        out.coefficients.col(k) /= nrm;
    }
    out.S = sys.S;
    out.states = states;
    out.sector = sector;
    return out;
}

double double_occupation(const SpectrumResult& result, int config_index) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(result.S);
    const Eigen::VectorXd ev = es.eigenvalues();
    Eigen::MatrixXcd shalf =
        es.eigenvectors() *
        ev.array().sqrt().matrix().asDiagonal() *
        es.eigenvectors().adjoint();
    const Eigen::VectorXcd d = shalf * result.coefficients.col(0);
    return std::norm(d(config_index));
}

MoIntegrals compute_mo_integrals(const MoInput& in) {
    MoIntegrals ints;
    const LengthScales scales =
        length_scales(in.field.B, in.hbar_omega0, in.mat);
    ints.orbitals = in.level == BasisLevel::sp
                        ? make_sp_basis(in.half_sep, scales, in.field)
                        : make_s_basis(in.half_sep, scales, in.field);
    ints.one_body = compute_one_body(ints.orbitals, in.pot, in.field, in.mat);
    ints.coulomb =
        compute_coulomb_tensor(ints.orbitals, in.mat, in.quad, in.n_threads);
    return ints;
}

namespace {

SpectrumResult merge_blocks(SpectrumResult even, const SpectrumResult& odd) {
    const int ne = int(even.energies.size());
    const int no = int(odd.energies.size());
    SpectrumResult merged;
    merged.sector = even.sector;
    merged.energies.resize(ne + no);
    std::vector<std::pair<double, std::pair<int, int>>> order; // (E, (block, idx))
    for (int k = 0; k < ne; ++k) order.push_back({even.energies(k), {0, k}});
    for (int k = 0; k < no; ++k) order.push_back({odd.energies(k), {1, k}});
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) {
                         if (a.first != b.first) return a.first < b.first;
                         return a.second.first < b.second.first; // even first
                     });
    // coefficients are kept in the block-ordered state list (even then odd)
    merged.states = even.states;
    merged.states.insert(merged.states.end(), odd.states.begin(),
                         odd.states.end());
    merged.coefficients =
        Eigen::MatrixXcd::Zero(ne + no, ne + no);
    merged.S = Eigen::MatrixXcd::Zero(ne + no, ne + no);
    merged.S.topLeftCorner(ne, ne) = even.S;
    merged.S.bottomRightCorner(no, no) = odd.S;
    for (int k = 0; k < ne + no; ++k) {
        merged.energies(k) = order[k].first;
        const auto [blk, idx] = order[k].second;
        if (blk == 0)
            merged.coefficients.col(k).head(ne) = even.coefficients.col(idx);
        else
            merged.coefficients.col(k).tail(no) = odd.coefficients.col(idx);
    }
    return merged;
}

} // namespace

MoResult mo_solve_with(const MoInput& in, const MoIntegrals& ints) {
    MoResult out;
    const int n_orb = int(ints.orbitals.size());

    auto solve_sector = [&](Sector sector) -> SpectrumResult {
        if (!in.use_parity) {
            const auto states = build_two_electron_basis(n_orb, sector, in.level);
            const auto sys = assemble(states, ints.one_body, ints.coulomb);
            return solve_generalized(sys, states, sector);
        }
        const auto combos = parity_symmetrize(ints.orbitals);
        Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(int(combos.size()), n_orb);
        std::vector<Parity> parities(combos.size());
        for (std::size_t p = 0; p < combos.size(); ++p) {
            parities[p] = combos[p].parity;
            for (const auto& [idx, c] : combos[p].parts) U(int(p), idx) = c;
        }
        OneBodyMatrix ob;
        ob.h = U.conjugate() * ints.one_body.h * U.transpose();
        ob.s = U.conjugate() * ints.one_body.s * U.transpose();
        const CoulombTensor ct = ints.coulomb.transformed(U);
        const auto states = build_two_electron_basis(parities, sector, in.level);
        std::vector<TwoElectronState> even, odd;
        for (const auto& st : states)
            (st.parity == Parity::even ? even : odd).push_back(st);
        SpectrumResult res_even, res_odd;
        bool have_even = !even.empty(), have_odd = !odd.empty();
        if (have_even) {
            const auto sys = assemble(even, ob, ct);
            res_even = solve_generalized(sys, even, sector);
        }
        if (have_odd) {
            const auto sys = assemble(odd, ob, ct);
            res_odd = solve_generalized(sys, odd, sector);
        }
        if (have_even && have_odd) return merge_blocks(res_even, res_odd);
        return have_even ? res_even : res_odd;
    };

    out.singlet = solve_sector(Sector::singlet);
    out.triplet = solve_sector(Sector::triplet);
    out.J = out.triplet.energies(0) - out.singlet.energies(0);
    if (in.field.include_zeeman) {
        // aligned triplet component is lowered by |g*| mu_B B
        out.J -= zeeman_splitting(in.mat, in.field.B);
    }

    // double occupation is defined in the plain product basis; re-solve the
    // singlet sector without parity blocking when needed
    {
        const SpectrumResult* plain = &out.singlet;
        SpectrumResult replaced;
        if (in.use_parity) {
            const auto states =
                build_two_electron_basis(n_orb, Sector::singlet, in.level);
            const auto sys = assemble(states, ints.one_body, ints.coulomb);
            replaced = solve_generalized(sys, states, Sector::singlet);
            plain = &replaced;
        }
        int ll = -1, rr = -1;
        for (std::size_t k = 0; k < plain->states.size(); ++k) {
            if (plain->states[k].i == 0 && plain->states[k].j == 0) ll = int(k);
            if (plain->states[k].i == 1 && plain->states[k].j == 1) rr = int(k);
        }
        if (ll >= 0) out.P_double = double_occupation(*plain, ll);
        out.P_double_both = out.P_double;
        if (rr >= 0) out.P_double_both += double_occupation(*plain, rr);
    }

    // merged two-sector spectrum, singlet first on ties
    const int ns = int(out.singlet.energies.size());
    const int nt = int(out.triplet.energies.size());
    std::vector<std::pair<double, Sector>> merged;
    merged.reserve(ns + nt);
    for (int k = 0; k < ns; ++k)
        merged.push_back({out.singlet.energies(k), Sector::singlet});
    for (int k = 0; k < nt; ++k)
        merged.push_back({out.triplet.energies(k), Sector::triplet});
    std::stable_sort(merged.begin(), merged.end(),
                     [](const auto& a, const auto& b) {
                         if (a.first != b.first) return a.first < b.first;
                         return a.second == Sector::singlet &&
                                b.second == Sector::triplet;
                     });
    for (const auto& [e, sec] : merged) {
        out.all_energies.push_back(e);
        out.all_sectors.push_back(sec);
    }
    return out;
}

MoResult mo_solve(const MoInput& in) {
    const MoIntegrals ints = compute_mo_integrals(in);
    return mo_solve_with(in, ints);
}

} // namespace qdmol
