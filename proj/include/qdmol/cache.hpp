#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qdmol/integrals.hpp"
#include "qdmol/mo_solver.hpp"

namespace qdmol {

// hex digest of the SHA-256 of `data`
std::string sha256_hex(const std::string& data);

// stable key over every physics-relevant field feeding a Coulomb tensor
std::string tensor_cache_key(const MoInput& in);

std::optional<CoulombTensor> load_cached_tensor(const std::string& cache_dir,
                                                const std::string& key);

void store_cached_tensor(const std::string& cache_dir, const std::string& key,
                         const CoulombTensor& tensor,
                         const std::vector<Orbital>& orbs);

// compute_mo_integrals with a read-through tensor cache
MoIntegrals cached_mo_integrals(const MoInput& in, const std::string& cache_dir);

} // namespace qdmol
