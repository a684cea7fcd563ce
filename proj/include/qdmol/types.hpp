#pragma once

namespace qdmol {

enum class Sector { singlet, triplet };

enum class BasisLevel { hl, hm, sp };

} // namespace qdmol
