#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace relaybf {

enum class ErrorKind {
  kNotPositiveDefinite,
  kDimensionMismatch,
  kSingularTrailingBlock,
  kNonPositivePivot,
  kDegenerateMultiplier,
  kNonHermitianResidual,
  kOrthogonalBeam,
  kNumericalFailure,
  kInvalidInstance,
  kSchema,
  kInfeasibleOnGrid,
};

std::string_view to_string(ErrorKind kind);

/// Error raised by the numerical kernels and the solvers. The kind is stable
/// and is what callers (and the CLI exit codes) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace relaybf
