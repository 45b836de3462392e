#include "hardylab/errors.hpp"

#include <cmath>

namespace hardylab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidField: return "InvalidField";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::WeightedNormDivergent: return "WeightedNormDivergent";
    case ErrorKind::BackwardDissipative: return "BackwardDissipative";
    case ErrorKind::UnstableStep: return "UnstableStep";
    case ErrorKind::NonUniformTimeGrid: return "NonUniformTimeGrid";
    case ErrorKind::GridOverflow: return "GridOverflow";
    case ErrorKind::InterpolationUnderresolved: return "InterpolationUnderresolved";
    case ErrorKind::SupportOutOfDomain: return "SupportOutOfDomain";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::TrajectoryTooShort: return "TrajectoryTooShort";
    case ErrorKind::BranchOrDecayLoss: return "BranchOrDecayLoss";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      detail_(detail) {}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorKind::ParameterOutOfRange, what);
  }
}

}  // namespace hardylab
