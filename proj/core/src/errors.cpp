#include "relaybf/errors.hpp"

namespace relaybf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kSingularTrailingBlock: return "SingularTrailingBlock";
    case ErrorKind::kNonPositivePivot: return "NonPositivePivot";
    case ErrorKind::kDegenerateMultiplier: return "DegenerateMultiplier";
    case ErrorKind::kNonHermitianResidual: return "NonHermitianResidual";
    case ErrorKind::kOrthogonalBeam: return "OrthogonalBeam";
    case ErrorKind::kNumericalFailure: return "NumericalFailure";
    case ErrorKind::kInvalidInstance: return "InvalidInstance";
    case ErrorKind::kSchema: return "Schema";
    case ErrorKind::kInfeasibleOnGrid: return "InfeasibleOnGrid";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace relaybf
