// errors.hpp - error taxonomy shared by every hardylab module.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hardylab {

enum class ErrorKind {
  InvalidField,
  GridMismatch,
  ParameterOutOfRange,
  WeightedNormDivergent,
  BackwardDissipative,
  UnstableStep,
  NonUniformTimeGrid,
  GridOverflow,
  InterpolationUnderresolved,
  SupportOutOfDomain,
  StepTooLarge,
  TrajectoryTooShort,
  BranchOrDecayLoss,
  InsufficientSamples,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure carries its kind; what() reads "Kind: detail".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

// Throws ParameterOutOfRange naming `what` unless value > 0.
void require_positive(double value, const char* what);

}  // namespace hardylab
