#include "logspiral/errors.hpp"

namespace logspiral {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositivePitch: return "NonPositivePitch";
    case ErrorCode::ZeroCirculation: return "ZeroCirculation";
    case ErrorCode::UnsortedPhases: return "UnsortedPhases";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::BranchOutOfRange: return "BranchOutOfRange";
    case ErrorCode::NonPositiveTime: return "NonPositiveTime";
    case ErrorCode::OnSheet: return "OnSheet";
    case ErrorCode::DegenerateDirection: return "DegenerateDirection";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::InvalidGauge: return "InvalidGauge";
    case ErrorCode::CompatibilityViolated: return "CompatibilityViolated";
    case ErrorCode::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorCode::StencilCrossesSheet: return "StencilCrossesSheet";
    case ErrorCode::QuadratureBudgetExceeded: return "QuadratureBudgetExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace logspiral
