#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace logspiral {

enum class ErrorCode {
  NonPositivePitch,
  ZeroCirculation,
  UnsortedPhases,
  LengthMismatch,
  BranchOutOfRange,
  NonPositiveTime,
  OnSheet,
  DegenerateDirection,
  NoConvergence,
  SingularJacobian,
  InvalidGauge,
  CompatibilityViolated,
  ToleranceNotMet,
  StencilCrossesSheet,
  QuadratureBudgetExceeded,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace logspiral
