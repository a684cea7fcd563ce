#include "qdmol/uhf.hpp"

#include <cmath>
#include <complex>
#include <type_traits>

#include "qdmol/errors.hpp"
#include "qdmol/units.hpp"

namespace qdmol {

namespace {

// 1D cell-centered stretched axis: xi in (-1,1), x = X atanh(xi tanh s)/s
void build_axis(int n, double extent, double stretch, std::vector<double>& x,
                std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    auto map = [&](double xi) {
        if (stretch <= 1e-12) return extent * xi;
        return extent * std::atanh(xi * std::tanh(stretch)) / stretch;
    };
    for (int j = 0; j < n; ++j) {
        const double xi = -1.0 + (2.0 * j + 1.0) / n;
        const double xi_lo = -1.0 + (2.0 * j) / n;
        const double xi_hi = -1.0 + (2.0 * j + 2.0) / n;
        x[j] = map(xi);
        w[j] = map(xi_hi) - map(xi_lo);
    }
}

} // namespace

double Mesh::weighted_area() const {
    double sx = 0, sy = 0;
    for (double v : wx) sx += v;
    for (double v : wy) sy += v;
    return sx * sy;
}

double Mesh::node_fraction_within(double bx, double by) const {
    int count = 0;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j)
            if (std::abs(x[i]) <= bx && std::abs(y[j]) <= by) ++count;
    return double(count) / double(nx * ny);
}

Mesh build_mesh(int nx, int ny, double extent_x, double extent_y,
                double stretch) {
    Mesh m;
    m.nx = nx;
    m.ny = ny;
    m.extent_x = extent_x;
    m.extent_y = extent_y;
    m.stretch = stretch;
    build_axis(nx, extent_x, stretch, m.x, m.wx);
    build_axis(ny, extent_y, stretch, m.y, m.wy);
    return m;
}

Mesh default_mesh(const ConfinementPotential& pot, const MaterialParams& mat,
                  int nx, int ny, double stretch) {
    double xc = pot.a, hw0 = 10.0;
    try {
        const ParabolaFit fit = fit_parabola_at_minima(pot, mat);
        xc = fit.x_min;
        hw0 = fit.hbar_omega0;
    } catch (const NoDoubleWell&) {
        // single-well shapes: scale from the x=0 curvature
        auto [vxx, vyy] = potential_hessian(pot, 0.0, 0.0);
        const double curv = std::max(1e-3, std::sqrt(std::abs(vxx * vyy)));
        hw0 = std::sqrt(units::hbar2_over_m0_meV_nm2 /
                        mat.effective_mass_ratio * curv);
        xc = std::max(pot.a, pot.lx);
    }
    const double l0 = std::sqrt(units::hbar2_over_m0_meV_nm2 /
                                mat.effective_mass_ratio / hw0);
    return build_mesh(nx, ny, xc + 4.0 * l0, 4.0 * l0, stretch);
}

namespace {

// assemble the weighted one-body Hamiltonian; Scalar is double at B=0
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>
build_h0(const ConfinementPotential& pot, const FieldConfig& field,
         const MaterialParams& mat, const Mesh& mesh) {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const int nx = mesh.nx, ny = mesh.ny, n = nx * ny;
    const double kf = units::kinetic_factor(mat.effective_mass_ratio);
    const double h2m = 2.0 * kf;
    const double hwc = units::hbar_omega_c(mat.effective_mass_ratio, field.B);
    const double dia = hwc * hwc / (8.0 * h2m);
    const double xg = field.gauge_center_x, yg = field.gauge_center_y;

    Mat H = Mat::Zero(n, n);
    auto id = [&](int i, int j) { return j * nx + i; };

    // kinetic flux form: gaps between neighbours and to the Dirichlet wall
    auto gap = [](const std::vector<double>& c, double extent, int k, int dir) {
        const int n1 = int(c.size());
        if (dir > 0) return k + 1 < n1 ? c[k + 1] - c[k] : extent - c[k];
        return k > 0 ? c[k] - c[k - 1] : c[k] + extent;
    };

    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int a = id(i, j);
            double diag = 0.0;
            const double hxp = gap(mesh.x, mesh.extent_x, i, +1);
            const double hxm = gap(mesh.x, mesh.extent_x, i, -1);
            const double hyp = gap(mesh.y, mesh.extent_y, j, +1);
            const double hym = gap(mesh.y, mesh.extent_y, j, -1);
            diag += kf * (1.0 / hxp + 1.0 / hxm) / mesh.wx[i];
            diag += kf * (1.0 / hyp + 1.0 / hym) / mesh.wy[j];
            if (i + 1 < nx) {
                const double v =
                    -kf / (hxp * std::sqrt(mesh.wx[i] * mesh.wx[i + 1]));
                H(a, id(i + 1, j)) += Scalar(v);
                H(id(i + 1, j), a) += Scalar(v);
            }
            if (j + 1 < ny) {
                const double v =
                    -kf / (hyp * std::sqrt(mesh.wy[j] * mesh.wy[j + 1]));
                H(a, id(i, j + 1)) += Scalar(v);
                H(id(i, j + 1), a) += Scalar(v);
            }
            diag += evaluate_potential(pot, mesh.x[i], mesh.y[j]);
            if (field.B != 0.0) {
                const double rx = mesh.x[i] - xg, ry = mesh.y[j] - yg;
                diag += dia * (rx * rx + ry * ry);
            }
            H(a, a) += Scalar(diag);
        }
    }

    if (field.B != 0.0) {
        if constexpr (std::is_same_v<Scalar, std::complex<double>>) {
            // paramagnetic term (hwc/2)(-i)((x-xg) d_y - (y-yg) d_x) in the
            // weighted antisymmetric central-difference form
            for (int j = 0; j < ny; ++j) {
                for (int i = 0; i < nx; ++i) {
                    const int a = id(i, j);
                    if (j + 1 < ny) {
                        const double beta =
                            0.5 / std::sqrt(mesh.wy[j] * mesh.wy[j + 1]);
                        const double cx = mesh.x[i] - xg;
                        const Scalar v(0.0, -0.5 * hwc * cx * beta);
                        H(a, id(i, j + 1)) += v;
                        H(id(i, j + 1), a) += std::conj(v);
                    }
                    if (i + 1 < nx) {
                        const double beta =
                            0.5 / std::sqrt(mesh.wx[i] * mesh.wx[i + 1]);
                        const double cy = mesh.y[j] - yg;
                        const Scalar v(0.0, +0.5 * hwc * cy * beta);
                        H(a, id(i + 1, j)) += v;
                        H(id(i + 1, j), a) += std::conj(v);
                    }
                }
            }
        }
    }
    return H;
}

// e^2/(eps r) kernel with the analytic cell average on the diagonal
Eigen::MatrixXd coulomb_kernel(const MaterialParams& mat, const Mesh& mesh) {
    const int nx = mesh.nx, ny = mesh.ny, n = nx * ny;
    const double e2 = mat.coulomb_scale();
    Eigen::MatrixXd v(n, n);
    auto id = [&](int i, int j) { return j * nx + i; };
    for (int j1 = 0; j1 < ny; ++j1)
        for (int i1 = 0; i1 < nx; ++i1) {
            const int a = id(i1, j1);
            for (int j2 = 0; j2 < ny; ++j2)
                for (int i2 = 0; i2 < nx; ++i2) {
                    const int b = id(i2, j2);
                    if (b < a) continue;
                    double val;
                    if (a == b) {
                        const double ax = 0.5 * mesh.wx[i1];
                        const double ay = 0.5 * mesh.wy[j1];
                        const double integral =
                            4.0 * (ax * std::asinh(ay / ax) +
                                   ay * std::asinh(ax / ay));
                        val = e2 * integral / (4.0 * ax * ay);
                    } else {
                        const double dx = mesh.x[i1] - mesh.x[i2];
                        const double dy = mesh.y[j1] - mesh.y[j2];
                        val = e2 / std::hypot(dx, dy);
                    }
                    v(a, b) = val;
                    v(b, a) = val;
                }
        }
    return v;
}

template <typename Scalar>
struct ScfWork {
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    Mat h0;
    Eigen::MatrixXd vker;
};

template <typename Scalar>
UhfState run_scf(const ConfinementPotential& pot, const FieldConfig& field,
                 const MaterialParams& mat, SpinConfig spin, const Mesh& mesh,
                 const UhfOptions& opts) {
    using Work = ScfWork<Scalar>;
    using Mat = typename Work::Mat;
    using Vec = typename Work::Vec;
    const int n = mesh.size();
    Work w;
    w.h0 = build_h0<Scalar>(pot, field, mat, mesh);
    w.vker = coulomb_kernel(mat, mesh) * opts.coulomb_scale;

    Eigen::SelfAdjointEigenSolver<Mat> guess(w.h0);
    Vec psi0 = guess.eigenvectors().col(0);
    Vec psi1 = guess.eigenvectors().col(1);

    UhfState state;
    state.spin_config = spin;

    auto density = [&](const Vec& v) -> Eigen::VectorXd {
        return v.cwiseAbs2();
    };
    auto h_expect = [&](const Vec& v) -> double {
        return std::real(Scalar(v.dot(w.h0 * v)));
    };

    const double alpha = opts.mixing;

    auto seed_vec = [&](const Eigen::VectorXcd& v, const Vec& fallback) -> Vec {
        if (v.size() != n) return fallback;
        if constexpr (std::is_same_v<Scalar, std::complex<double>>) {
            return v;
        } else {
            Eigen::VectorXd r = v.real();
            return r / r.norm();
        }
    };

    if (spin == SpinConfig::opposite && !opts.restricted) {
        // initial localized guess: left/right mixtures of the lowest pair
        Vec up = (psi0 + psi1) / std::sqrt(2.0);
        Vec dn = (psi0 - psi1) / std::sqrt(2.0);
        // make "up" the left one
        double xup = 0.0;
        for (int j = 0; j < mesh.ny; ++j)
            for (int i = 0; i < mesh.nx; ++i)
                xup += mesh.x[i] * std::norm(up(j * mesh.nx + i));
        if (xup > 0.0) std::swap(up, dn);
        up = seed_vec(opts.init_up, up);
        dn = seed_vec(opts.init_dn, dn);

        Eigen::VectorXd rho_up = density(up), rho_dn = density(dn);
        double e_prev = 0.0;
        for (int it = 0; it < opts.max_iter; ++it) {
            Mat f_up = w.h0;
            Mat f_dn = w.h0;
            const Eigen::VectorXd vj_dn = w.vker * rho_dn;
            const Eigen::VectorXd vj_up = w.vker * rho_up;
            f_up.diagonal() += vj_dn.template cast<Scalar>();
            f_dn.diagonal() += vj_up.template cast<Scalar>();
            Eigen::SelfAdjointEigenSolver<Mat> es_up(f_up);
            Eigen::SelfAdjointEigenSolver<Mat> es_dn(f_dn);
            up = es_up.eigenvectors().col(0);
            dn = es_dn.eigenvectors().col(0);
            const double direct =
                density(up).dot(w.vker * density(dn));
            const double e = h_expect(up) + h_expect(dn) + direct;
            state.energy_history.push_back(e);
            state.iterations = it + 1;
            state.orbital_energies = {es_up.eigenvalues()(0),
                                      es_dn.eigenvalues()(0)};
            if (it > 0 && std::abs(e - e_prev) < opts.tol) {
                state.converged = true;
                e_prev = e;
                break;
            }
            e_prev = e;
            rho_up = (1.0 - alpha) * rho_up + alpha * density(up);
            rho_dn = (1.0 - alpha) * rho_dn + alpha * density(dn);
        }
        state.total_energy = e_prev;
        state.orbital_up = up.template cast<std::complex<double>>();
        state.orbital_down = dn.template cast<std::complex<double>>();
        state.s2 = 1.0 - std::norm(std::complex<double>(
                             state.orbital_up.dot(state.orbital_down)));
        return state;
    }

    if (spin == SpinConfig::opposite && opts.restricted) {
        Vec psi = psi0;
        Eigen::VectorXd rho = density(psi);
        double e_prev = 0.0;
        for (int it = 0; it < opts.max_iter; ++it) {
            Mat f = w.h0;
            f.diagonal() += (w.vker * rho).template cast<Scalar>();
            Eigen::SelfAdjointEigenSolver<Mat> es(f);
            psi = es.eigenvectors().col(0);
            const double e =
                2.0 * h_expect(psi) + density(psi).dot(w.vker * density(psi));
            state.energy_history.push_back(e);
            state.iterations = it + 1;
            state.orbital_energies = {es.eigenvalues()(0)};
            if (it > 0 && std::abs(e - e_prev) < opts.tol) {
                state.converged = true;
                e_prev = e;
                break;
            }
            e_prev = e;
            rho = (1.0 - alpha) * rho + alpha * density(psi);
        }
        state.total_energy = e_prev;
        state.orbital_up = psi.template cast<std::complex<double>>();
        state.orbital_down = state.orbital_up;
        state.s2 = 0.0;
        return state;
    }

    // parallel spins: two electrons in one spin channel
    Vec p1 = psi0, p2 = psi1;
    Eigen::VectorXd rho = density(p1) + density(p2);
    Mat pair = p1 * p1.adjoint() + p2 * p2.adjoint();
    double e_prev = 0.0;
    for (int it = 0; it < opts.max_iter; ++it) {
        Mat f = w.h0;
        f.diagonal() += (w.vker * rho).template cast<Scalar>();
        f -= pair.cwiseProduct(w.vker.template cast<Scalar>());
        Eigen::SelfAdjointEigenSolver<Mat> es(f);
        p1 = es.eigenvectors().col(0);
        p2 = es.eigenvectors().col(1);
        const double j12 = density(p1).dot(w.vker * density(p2));
        Vec t = p1.conjugate().cwiseProduct(p2);
        const double k12 = std::real(Scalar(
            (t.transpose() * w.vker.template cast<Scalar>() * t.conjugate())(0)));
        const double e = h_expect(p1) + h_expect(p2) + j12 - k12;
        state.energy_history.push_back(e);
        state.iterations = it + 1;
        state.orbital_energies = {es.eigenvalues()(0), es.eigenvalues()(1)};
        if (it > 0 && std::abs(e - e_prev) < opts.tol) {
            state.converged = true;
            e_prev = e;
            break;
        }
        e_prev = e;
        rho = (1.0 - alpha) * rho + alpha * (density(p1) + density(p2));
        pair = (1.0 - alpha) * pair +
               alpha * (p1 * p1.adjoint() + p2 * p2.adjoint());
    }
    state.total_energy = e_prev;
    state.orbital_up = p1.template cast<std::complex<double>>();
    state.orbital_down = p2.template cast<std::complex<double>>();
    state.s2 = 2.0;
    return state;
}

} // namespace

Eigen::MatrixXcd grid_hamiltonian(const ConfinementPotential& pot,
                                  const FieldConfig& field,
                                  const MaterialParams& mat, const Mesh& mesh) {
    return build_h0<std::complex<double>>(pot, field, mat, mesh);
}

UhfState scf(const ConfinementPotential& pot, const FieldConfig& field,
             const MaterialParams& mat, SpinConfig spin, const Mesh& mesh,
             const UhfOptions& opts) {
    if (field.B == 0.0) {
        return run_scf<double>(pot, field, mat, spin, mesh, opts);
    }
    return run_scf<std::complex<double>>(pot, field, mat, spin, mesh, opts);
}

UhfSplit uhf_splitting(const ConfinementPotential& pot,
                       const FieldConfig& field, const MaterialParams& mat,
                       const Mesh& mesh, const UhfOptions& opts) {
    UhfSplit out;
    out.parallel = scf(pot, field, mat, SpinConfig::parallel, mesh, opts);
    out.opposite = scf(pot, field, mat, SpinConfig::opposite, mesh, opts);
    // the opposite-spin determinant can always reuse the parallel orbitals
    // at the cost of one exchange integral, so a solution above the parallel
    // state marks a suboptimal SCF fixed point; retry from that seed
    if (out.parallel.converged && out.opposite.converged &&
        out.opposite.total_energy > out.parallel.total_energy) {
        UhfOptions retry = opts;
        retry.init_up = out.parallel.orbital_up;
        retry.init_dn = out.parallel.orbital_down;
        const UhfState again =
            scf(pot, field, mat, SpinConfig::opposite, mesh, retry);
        if (again.converged && again.total_energy < out.opposite.total_energy)
            out.opposite = again;
    }
    if (!out.opposite.converged || !out.parallel.converged) {
        throw ScfNotConverged("a UHF spin configuration did not converge");
    }
    out.J = out.parallel.total_energy - out.opposite.total_energy;
    return out;
}

} // namespace qdmol
