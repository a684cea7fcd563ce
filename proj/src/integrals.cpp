#include "qdmol/integrals.hpp"

#include <array>
#include <atomic>
#include <cassert>
#include <cmath>
#include <random>
#include <thread>

#include "qdmol/errors.hpp"
#include "qdmol/units.hpp"

namespace qdmol {

namespace {
constexpr double pi = 3.14159265358979323846;

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= double(n - k + i) / double(i);
    return r;
}

// flattened evaluator grouping terms with a common gaussian/plane-wave factor
struct EvalBlock {
    double ax, ay, cx, cy, kx, ky;
    std::vector<std::tuple<int, int, cdouble>> mono; // px, py, coef
};

std::vector<EvalBlock> compile_blocks(const GaussSum& f) {
    std::vector<EvalBlock> blocks;
    for (const auto& t : f) {
        EvalBlock* found = nullptr;
        for (auto& b : blocks) {
            if (b.ax == t.ax && b.ay == t.ay && b.cx == t.cx && b.cy == t.cy &&
                b.kx == t.kx && b.ky == t.ky) {
                found = &b;
                break;
            }
        }
        if (!found) {
            blocks.push_back({t.ax, t.ay, t.cx, t.cy, t.kx, t.ky, {}});
            found = &blocks.back();
        }
        found->mono.emplace_back(t.px, t.py, t.coef);
    }
    return blocks;
}

cdouble eval_blocks(const std::vector<EvalBlock>& blocks, double x, double y) {
    cdouble out{0.0, 0.0};
    double xp[8], yp[8];
    xp[0] = yp[0] = 1.0;
    for (int i = 1; i < 8; ++i) {
        xp[i] = xp[i - 1] * x;
        yp[i] = yp[i - 1] * y;
    }
    for (const auto& b : blocks) {
        const double dx = x - b.cx, dy = y - b.cy;
        const double g = std::exp(-b.ax * dx * dx - b.ay * dy * dy);
        const double ph = b.kx * x + b.ky * y;
        cdouble poly{0.0, 0.0};
        for (const auto& [px, py, c] : b.mono) poly += c * (xp[px] * yp[py]);
        out += poly * g * cdouble{std::cos(ph), std::sin(ph)};
    }
    return out;
}

// radius beyond which every gaussian block is negligible
double support_radius(const GaussSum& f) {
    double r = 0.0;
    for (const auto& t : f) {
        const double amin = std::min(t.ax, t.ay);
        const double reach = std::hypot(t.cx, t.cy) +
                             (amin > 0 ? 9.0 / std::sqrt(amin) : 0.0);
        r = std::max(r, reach);
    }
    return r;
}

// 16-point Gauss-Legendre nodes/weights on [-1,1]
constexpr int kGL = 16;
constexpr double gl_x[kGL] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318,
    -0.7554044083550030, -0.6178762444026438, -0.4580167776572274,
    -0.2816035507792589, -0.0950125098376374, 0.0950125098376374,
    0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,
    0.9894009349916499};
constexpr double gl_w[kGL] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928,
    0.1246289712555339, 0.1495959888165767, 0.1691565193950025,
    0.1826034150449236, 0.1894506104550685, 0.1894506104550685,
    0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479,
    0.0271524594117541};

// int_0^{2pi} int_0^{Rmax} G(r cos t, r sin t) dr dt
cdouble polar_integral(const std::vector<EvalBlock>& blocks, double rmax,
                       int n_theta, int n_panels) {
    cdouble acc{0.0, 0.0};
    const double dtheta = 2.0 * pi / n_theta;
    const double dr = rmax / n_panels;
    for (int it = 0; it < n_theta; ++it) {
        const double th = it * dtheta;
        const double ct = std::cos(th), st = std::sin(th);
        cdouble ray{0.0, 0.0};
        for (int p = 0; p < n_panels; ++p) {
            const double r0 = p * dr, r1 = r0 + dr;
            const double rm = 0.5 * (r0 + r1), rh = 0.5 * (r1 - r0);
            for (int q = 0; q < kGL; ++q) {
                const double r = rm + rh * gl_x[q];
                ray += gl_w[q] * rh * eval_blocks(blocks, r * ct, r * st);
            }
        }
        acc += ray * dtheta;
    }
    return acc;
}

} // namespace

GaussSum apply_kinetic(const GaussSum& f, const MaterialParams& mat,
                       const FieldConfig& field) {
    const double h2m = units::hbar2_over_m0_meV_nm2 / mat.effective_mass_ratio;
    GaussSum fx = ddx(f), fy = ddy(f);
    GaussSum out = scaled(ddx(fx) + ddy(fy), -0.5 * h2m);
    if (field.B != 0.0) {
        const double hwc = units::hbar_omega_c(mat.effective_mass_ratio, field.B);
        const double xg = field.gauge_center_x, yg = field.gauge_center_y;
        // (hbar omega_c / 2) * (-i) ((x-xg) d_y - (y-yg) d_x)
        GaussSum lz = times_monomial(fy, 1, 0) + scaled(fy, -xg) +
                      scaled(times_monomial(fx, 0, 1), -1.0) + scaled(fx, yg);
        out = out + scaled(lz, cdouble{0.0, -0.5 * hwc});
        // (m* omega_c^2 / 8) |r - r_g|^2
        const double dia = hwc * hwc / (8.0 * h2m);
        GaussSum r2 = times_monomial(f, 2, 0) + times_monomial(f, 0, 2) +
                      scaled(times_monomial(f, 1, 0), -2.0 * xg) +
                      scaled(times_monomial(f, 0, 1), -2.0 * yg) +
                      scaled(f, xg * xg + yg * yg);
        out = out + scaled(r2, dia);
    }
    merge_terms(out);
    return out;
}

GaussSum potential_terms(const ConfinementPotential& pot) {
    GaussSum v;
    GaussTerm w1;
    w1.coef = pot.V0;
    w1.ax = 1.0 / (pot.lx * pot.lx);
    w1.ay = 1.0 / (pot.ly * pot.ly);
    w1.cx = pot.a;
    v.push_back(w1);
    GaussTerm w2 = w1;
    w2.cx = -pot.a;
    v.push_back(w2);
    GaussTerm b;
    b.coef = pot.Vb;
    b.ax = 1.0 / (pot.lbx * pot.lbx);
    b.ay = 1.0 / (pot.lby * pot.lby);
    v.push_back(b);
    return v;
}

cdouble one_body_element(const Orbital& a, const Orbital& b,
                         const ConfinementPotential& pot,
                         const FieldConfig& field, const MaterialParams& mat) {
    const GaussSum fb = orbital_function(b);
    GaussSum hb = apply_kinetic(fb, mat, field) + product(potential_terms(pot), fb);
    return inner(orbital_function(a), hb);
}

OneBodyMatrix compute_one_body(const std::vector<Orbital>& orbs,
                               const ConfinementPotential& pot,
                               const FieldConfig& field,
                               const MaterialParams& mat) {
    const int n = int(orbs.size());
    OneBodyMatrix m;
    m.h.resize(n, n);
    m.s.resize(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            m.h(i, j) = one_body_element(orbs[i], orbs[j], pot, field, mat);
            m.s(i, j) = overlap(orbs[i], orbs[j]);
            if (j > i) {
                m.h(j, i) = std::conj(m.h(i, j));
                m.s(j, i) = std::conj(m.s(i, j));
            }
        }
    }
    return m;
}

GaussSum shifted_product_integral(const GaussSum& f, const GaussSum& g) {
    GaussSum out;
    for (const auto& t1 : f) {
        for (const auto& t2 : g) {
            // per axis: lambda, center D, k_u, merged-gamma data
            struct Axis {
                double gamma, lambda, D, m0, K, ku;
            };
            auto make_axis = [](double a1, double c1, double k1, double a2,
                                double c2, double k2) {
                Axis ax;
                ax.gamma = a1 + a2;
                ax.lambda = a1 * a2 / ax.gamma;
                ax.D = c1 - c2;
                ax.m0 = (a1 * c1 + a2 * c2) / ax.gamma;
                ax.K = k1 + k2;
                ax.ku = k1 - a1 * ax.K / ax.gamma;
                return ax;
            };
            const Axis X = make_axis(t1.ax, t1.cx, t1.kx, t2.ax, t2.cx, t2.kx);
            const Axis Y = make_axis(t1.ay, t1.cy, t1.ky, t2.ay, t2.cy, t2.ky);

            // per-axis polynomial factors in u: coef[j][m+n] handled by
            // accumulating coefficient-of-u^j times the t-moment value
            auto axis_poly = [](const Axis& ax, int p1, int p2, double a1,
                                std::vector<cdouble>& upoly) {
                // upoly[j] = sum over expansions of u^j coefficient
                const double b1 = (ax.gamma - a1) / ax.gamma; // a2/gamma
                const double b2 = -a1 / ax.gamma;
                upoly.assign(p1 + p2 + 1, cdouble{0.0, 0.0});
                for (int m = 0; m <= p1; ++m) {
                    for (int j = 0; j <= p1 - m; ++j) {
                        const double c1f = binom(p1, m) * binom(p1 - m, j) *
                                           std::pow(ax.m0, p1 - m - j) *
                                           std::pow(b1, j);
                        for (int n = 0; n <= p2; ++n) {
                            for (int l = 0; l <= p2 - n; ++l) {
                                const double c2f = binom(p2, n) *
                                                   binom(p2 - n, l) *
                                                   std::pow(ax.m0, p2 - n - l) *
                                                   std::pow(b2, l);
                                const cdouble mom =
                                    gauss_moment(m + n, ax.gamma, ax.K);
                                upoly[j + l] += c1f * c2f * mom;
                            }
                        }
                    }
                }
                // constant phase e^{i K m0}
                const double ph = ax.K * ax.m0;
                const cdouble rot{std::cos(ph), std::sin(ph)};
                for (auto& c : upoly) c *= rot;
            };

            std::vector<cdouble> ux, uy;
            axis_poly(X, t1.px, t2.px, t1.ax, ux);
            axis_poly(Y, t1.py, t2.py, t1.ay, uy);

            const cdouble base = t1.coef * t2.coef;
            for (std::size_t jx = 0; jx < ux.size(); ++jx) {
                for (std::size_t jy = 0; jy < uy.size(); ++jy) {
                    GaussTerm t;
                    t.coef = base * ux[jx] * uy[jy];
                    t.px = int(jx);
                    t.py = int(jy);
                    t.ax = X.lambda;
                    t.ay = Y.lambda;
                    t.cx = X.D;
                    t.cy = Y.D;
                    t.kx = X.ku;
                    t.ky = Y.ku;
                    out.push_back(t);
                }
            }
        }
    }
    merge_terms(out, 0.0);
    return out;
}

cdouble coulomb_element(const Orbital& oi, const Orbital& oj, const Orbital& ok,
                        const Orbital& ol, const MaterialParams& mat,
                        const QuadOptions& opts) {
    // (ij|kl): electron 1 density conj(phi_i) phi_k, electron 2 density
    // conj(phi_j) phi_l; reduce to a 2D integral over u = r1 - r2.
    const GaussSum d1 = product(conjugate(orbital_function(oi)), orbital_function(ok));
    const GaussSum d2 = product(conjugate(orbital_function(oj)), orbital_function(ol));
    GaussSum G = shifted_product_integral(d1, d2);
    const auto blocks = compile_blocks(G);
    const double rmax = std::max(support_radius(G), 1.0);

    const double unit = mat.coulomb_scale() / oi.l0; // on-site scale
    int n_theta = 48, n_panels = 6;
    cdouble prev = polar_integral(blocks, rmax, n_theta, n_panels);
    for (int depth = 0; depth < opts.max_depth; ++depth) {
        n_theta *= 2;
        n_panels *= 2;
        const cdouble cur = polar_integral(blocks, rmax, n_theta, n_panels);
        const double err = std::abs(cur - prev);
        if (err <= opts.rel_tol * std::max(std::abs(cur), 1e-3 * unit)) {
            return mat.coulomb_scale() * cur;
        }
        prev = cur;
    }
    throw QuadratureNotConverged("coulomb element quadrature did not converge");
}

void CoulombTensor::set(int i, int j, int k, int l, cdouble v) {
    bool cflag = false;
    const auto key = canonical_key(i, j, k, l, cflag);
    store_[key] = cflag ? std::conj(v) : v;
}

cdouble CoulombTensor::operator()(int i, int j, int k, int l) const {
    bool cflag = false;
    const auto key = canonical_key(i, j, k, l, cflag);
    const auto it = store_.find(key);
    assert(it != store_.end());
    return cflag ? std::conj(it->second) : it->second;
}

std::uint32_t CoulombTensor::canonical_key(int i, int j, int k, int l,
                                           bool& conj_flag) {
    auto pack = [](int a, int b, int c, int d) {
        return std::uint32_t(a) << 24 | std::uint32_t(b) << 16 |
               std::uint32_t(c) << 8 | std::uint32_t(d);
    };
    // (ij|kl) = (ji|lk) = conj((kl|ij)) = conj((lk|ji))
    const std::uint32_t same[2] = {pack(i, j, k, l), pack(j, i, l, k)};
    const std::uint32_t conj2[2] = {pack(k, l, i, j), pack(l, k, j, i)};
    std::uint32_t best = same[0];
    conj_flag = false;
    for (auto v : same)
        if (v < best) best = v;
    for (auto v : conj2)
        if (v < best) {
            best = v;
            conj_flag = true;
        }
    return best;
}

CoulombTensor CoulombTensor::transformed(const Eigen::MatrixXcd& U) const {
    const int n = n_;
    const int m = int(U.rows());
    assert(U.cols() == n);
    // contract one index at a time
    using T4 = std::vector<cdouble>;
    auto idx = [](int n0, int n1, int n2, int n3, int i, int j, int k, int l) {
        (void)n0;
        return ((std::size_t(i) * n1 + j) * n2 + k) * n3 + l;
    };
    T4 t0(std::size_t(n) * n * n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    t0[idx(n, n, n, n, i, j, k, l)] = (*this)(i, j, k, l);

    // direct quadruple transform: sizes here are tiny (n <= 8)
    T4 out(std::size_t(m) * m * m * m, cdouble{0.0, 0.0});
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
            for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s) {
                    cdouble acc{0.0, 0.0};
                    for (int i = 0; i < n; ++i) {
                        const cdouble up = std::conj(U(p, i));
                        if (up == cdouble{0.0, 0.0}) continue;
                        for (int j = 0; j < n; ++j) {
                            const cdouble uq = std::conj(U(q, j));
                            if (uq == cdouble{0.0, 0.0}) continue;
                            for (int k = 0; k < n; ++k) {
                                const cdouble ur = U(r, k);
                                if (ur == cdouble{0.0, 0.0}) continue;
                                for (int l = 0; l < n; ++l) {
                                    const cdouble us = U(s, l);
                                    if (us == cdouble{0.0, 0.0}) continue;
                                    acc += up * uq * ur * us *
                                           t0[idx(n, n, n, n, i, j, k, l)];
                                }
                            }
                        }
                    }
                    out[idx(m, m, m, m, p, q, r, s)] = acc;
                }
    CoulombTensor result(m);
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
            for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s)
                    result.set(p, q, r, s, out[idx(m, m, m, m, p, q, r, s)]);
    return result;
}

CoulombTensor compute_coulomb_tensor(const std::vector<Orbital>& orbs,
                                     const MaterialParams& mat,
                                     const QuadOptions& opts, int n_threads) {
    const int n = int(orbs.size());
    CoulombTensor tensor(n);
    // collect unique quadruples
    std::vector<std::array<int, 4>> quads;
    std::unordered_map<std::uint32_t, bool> seen;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    bool cflag = false;
                    const auto key =
                        CoulombTensor::canonical_key(i, j, k, l, cflag);
                    if (seen.count(key)) continue;
                    seen.emplace(key, true);
                    quads.push_back({i, j, k, l});
                }
    std::vector<cdouble> values(quads.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t q = next.fetch_add(1);
            if (q >= quads.size()) break;
            const auto& [i, j, k, l] = quads[q];
            values[q] = coulomb_element(orbs[i], orbs[j], orbs[k], orbs[l], mat, opts);
        }
    };
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (std::size_t q = 0; q < quads.size(); ++q) {
        const auto& [i, j, k, l] = quads[q];
        tensor.set(i, j, k, l, values[q]);
    }
    return tensor;
}

McEstimate coulomb_oracle_mc(const Orbital& oi, const Orbital& oj,
                             const Orbital& ok, const Orbital& ol,
                             const MaterialParams& mat, std::size_t n_samples,
                             std::uint64_t seed) {
    const GaussSum d1 = product(conjugate(orbital_function(oi)), orbital_function(ok));
    const GaussSum d2 = product(conjugate(orbital_function(oj)), orbital_function(ol));
    const auto b1 = compile_blocks(d1);
    const auto b2 = compile_blocks(d2);
    const double l0 = oi.l0;
    const double c1x = d1.front().cx, c1y = d1.front().cy;
    const double c2x = d2.front().cx, c2y = d2.front().cy;
    const double sep = std::hypot(c1x - c2x, c1y - c2y);
    const double s = sep + 3.0 * l0; // radial scale for |u|

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uang(0.0, 2.0 * pi);

    const double sigma2 = l0 / std::sqrt(2.0); // per-axis width matching |d2|
    const double e2eps = mat.coulomb_scale();
    double sum_re = 0, sum_im = 0, sq_re = 0, sq_im = 0;
    for (std::size_t it = 0; it < n_samples; ++it) {
        const double x2 = c2x + sigma2 * gauss(rng);
        const double y2 = c2y + sigma2 * gauss(rng);
        const double rho = std::abs(s * gauss(rng));
        const double th = uang(rng);
        const double x1 = x2 + rho * std::cos(th);
        const double y1 = y2 + rho * std::sin(th);

        const double p2 = std::exp(-((x2 - c2x) * (x2 - c2x) +
                                     (y2 - c2y) * (y2 - c2y)) /
                                   (l0 * l0)) /
                          (pi * l0 * l0);
        const double prho = std::sqrt(2.0 / pi) / s *
                            std::exp(-rho * rho / (2.0 * s * s));
        const cdouble f = eval_blocks(b1, x1, y1) * eval_blocks(b2, x2, y2) * e2eps;
        // 1/|u| of the integrand cancels against the angular density
        const cdouble w = f * (2.0 * pi) / (p2 * prho);
        sum_re += w.real();
        sum_im += w.imag();
        sq_re += w.real() * w.real();
        sq_im += w.imag() * w.imag();
    }
    const double nn = double(n_samples);
    const double mean_re = sum_re / nn, mean_im = sum_im / nn;
    const double var_re = std::max(0.0, sq_re / nn - mean_re * mean_re);
    const double var_im = std::max(0.0, sq_im / nn - mean_im * mean_im);
    McEstimate est;
    est.estimate = cdouble{mean_re, mean_im};
    est.std_error = std::sqrt((var_re + var_im) / nn);
    return est;
}

std::vector<ElementQuad> enumerate_unique_elements(int n_states, bool use_parity,
                                                   Sector sector) {
    // recover the orbital count
    int n_orb = -1;
    for (int n = 1; n <= 64; ++n) {
        const int count = sector == Sector::singlet ? n * (n + 1) / 2
                                                    : n * (n - 1) / 2;
        if (count == n_states) {
            n_orb = n;
            break;
        }
    }
    if (n_orb < 0) {
        throw ConfigError("state count is not consistent with any orbital basis");
    }

    struct State {
        int i, j, parity; // parity: 0 even, 1 odd
    };
    std::vector<State> states;
    if (!use_parity) {
        for (int i = 0; i < n_orb; ++i)
            for (int j = i; j < n_orb; ++j) {
                if (sector == Sector::triplet && i == j) continue;
                states.push_back({i, j, 0});
            }
        std::vector<ElementQuad> out;
        for (std::size_t p = 0; p < states.size(); ++p)
            for (std::size_t q = p; q < states.size(); ++q)
                out.push_back({states[p].i, states[p].j, states[q].i, states[q].j});
        return out;
    }
    // mirror pairs give one even and one odd combination each; a centered
    // orbital keeps parity (-1)^|m| but does not occur in the standard bases
    const int ne = n_orb / 2 + (n_orb % 2);
    std::vector<int> orb_parity(n_orb);
    for (int i = 0; i < n_orb; ++i) orb_parity[i] = i < ne ? 0 : 1;
    for (int i = 0; i < n_orb; ++i)
        for (int j = i; j < n_orb; ++j) {
            if (sector == Sector::triplet && i == j) continue;
            states.push_back({i, j, (orb_parity[i] + orb_parity[j]) % 2});
        }
    std::vector<ElementQuad> out;
    for (int block = 0; block < 2; ++block) {
        std::vector<State> members;
        for (const auto& s : states)
            if (s.parity == block) members.push_back(s);
        for (std::size_t p = 0; p < members.size(); ++p)
            for (std::size_t q = p; q < members.size(); ++q)
                out.push_back({members[p].i, members[p].j, members[q].i,
                               members[q].j});
    }
    return out;
}

} // namespace qdmol
