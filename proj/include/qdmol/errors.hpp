#pragma once

#include <stdexcept>
#include <string>

namespace qdmol {

struct NoDoubleWell : std::runtime_error {
    explicit NoDoubleWell(const std::string& what) : std::runtime_error(what) {}
};

struct UnpairedOrbital : std::runtime_error {
    explicit UnpairedOrbital(const std::string& what) : std::runtime_error(what) {}
};

struct QuadratureNotConverged : std::runtime_error {
    explicit QuadratureNotConverged(const std::string& what) : std::runtime_error(what) {}
};

struct SingularOverlap : std::runtime_error {
    explicit SingularOverlap(const std::string& what) : std::runtime_error(what) {}
};

struct OptimizerDidNotConverge : std::runtime_error {
    explicit OptimizerDidNotConverge(const std::string& what) : std::runtime_error(what) {}
};

struct ScfNotConverged : std::runtime_error {
    explicit ScfNotConverged(const std::string& what) : std::runtime_error(what) {}
};

struct ZeroCoupling : std::runtime_error {
    explicit ZeroCoupling(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateSweep : std::runtime_error {
    explicit DegenerateSweep(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qdmol
