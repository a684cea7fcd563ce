#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "qdmol/basis.hpp"
#include "qdmol/gauss2d.hpp"
#include "qdmol/model.hpp"
#include "qdmol/types.hpp"

namespace qdmol {

struct QuadOptions {
    double rel_tol = 1e-6;
    int max_depth = 12;
};

struct OneBodyMatrix {
    Eigen::MatrixXcd h; // meV
    Eigen::MatrixXcd s;
};

// Two-body elements (ij|kl) = <phi_i(1) phi_j(2)| e^2/(eps r12) |phi_k(1) phi_l(2)>,
// stored once per symmetry-unique quadruple:
//   (ij|kl) = (ji|lk) = conj((kl|ij)).
class CoulombTensor {
  public:
    CoulombTensor() = default;
    explicit CoulombTensor(int n) : n_(n) {}

    int n() const { return n_; }
    void set(int i, int j, int k, int l, cdouble v);
    cdouble operator()(int i, int j, int k, int l) const;
    std::size_t stored_count() const { return store_.size(); }

    static std::uint32_t canonical_key(int i, int j, int k, int l, bool& conj_flag);

    // parity-adapted (or any linear) transform of the orbital basis,
    // rows of U are the new orbitals in terms of the old
    CoulombTensor transformed(const Eigen::MatrixXcd& U) const;

    // raw canonical storage, for the on-disk cache
    const std::unordered_map<std::uint32_t, cdouble>& raw() const {
        return store_;
    }
    void set_raw(std::uint32_t key, cdouble v) { store_[key] = v; }

  private:
    int n_ = 0;
    std::unordered_map<std::uint32_t, cdouble> store_;
};

// action of the field-dependent single-particle Hamiltonian (kinetic +
// paramagnetic + diamagnetic, no confinement) on f
GaussSum apply_kinetic(const GaussSum& f, const MaterialParams& mat,
                       const FieldConfig& field);

// the three potential Gaussians as a GaussSum factor
GaussSum potential_terms(const ConfinementPotential& pot);

cdouble one_body_element(const Orbital& a, const Orbital& b,
                         const ConfinementPotential& pot,
                         const FieldConfig& field, const MaterialParams& mat);

OneBodyMatrix compute_one_body(const std::vector<Orbital>& orbs,
                               const ConfinementPotential& pot,
                               const FieldConfig& field,
                               const MaterialParams& mat);

// G(u) = int f(r+u) g(r) d^2 r as a function in the same closed family
GaussSum shifted_product_integral(const GaussSum& f, const GaussSum& g);

cdouble coulomb_element(const Orbital& oi, const Orbital& oj,
                        const Orbital& ok, const Orbital& ol,
                        const MaterialParams& mat, const QuadOptions& opts = {});

CoulombTensor compute_coulomb_tensor(const std::vector<Orbital>& orbs,
                                     const MaterialParams& mat,
                                     const QuadOptions& opts = {},
                                     int n_threads = 1);

struct McEstimate {
    cdouble estimate;
    double std_error;
};

// Importance-sampled 4D Monte-Carlo estimate of the same integral; test oracle.
McEstimate coulomb_oracle_mc(const Orbital& oi, const Orbital& oj,
                             const Orbital& ok, const Orbital& ol,
                             const MaterialParams& mat, std::size_t n_samples,
                             std::uint64_t seed);

// One unique Coulomb matrix element between two-electron states: state pair
// (a,b) on the bra side, (c,d) on the ket side.
struct ElementQuad {
    int a, b, c, d;
};

// Unique two-electron-basis Coulomb elements after Hermiticity reduction and
// optional parity blocking.  n_states must be a valid singlet (n(n+1)/2) or
// triplet (n(n-1)/2) count for some orbital number n.
std::vector<ElementQuad> enumerate_unique_elements(int n_states, bool use_parity,
                                                   Sector sector);

} // namespace qdmol
