#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace superprolong {

#define SUPERPROLONG_ERROR(Name)                                           \
  struct Name : std::runtime_error {                                       \
    explicit Name(const std::string& what) : std::runtime_error(what) {}  \
  };

SUPERPROLONG_ERROR(InconsistentSystem)
SUPERPROLONG_ERROR(ConstructionFailure)
SUPERPROLONG_ERROR(OddDimension)
SUPERPROLONG_ERROR(SigmaTauViolation)
SUPERPROLONG_ERROR(DegenerateForm)
SUPERPROLONG_ERROR(IsotropicVector)
SUPERPROLONG_ERROR(ClosureFailure)
SUPERPROLONG_ERROR(DecompositionFailure)
SUPERPROLONG_ERROR(InconsistentPhi)
SUPERPROLONG_ERROR(NonIntegerGrading)

#undef SUPERPROLONG_ERROR

// No non-degenerate bracket could be chosen for the requested (D, N).
struct NoStructure : std::runtime_error {
  NoStructure(const std::string& what, std::size_t gamma_space_dim)
      : std::runtime_error(what), gamma_space_dim(gamma_space_dim) {}
  std::size_t gamma_space_dim;
};

}  // namespace superprolong
