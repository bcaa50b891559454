#include "phasekit/error.hpp"

namespace phasekit {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::PathIntersectsSolenoidCore: return "PathIntersectsSolenoidCore";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::MismatchedEndpoints: return "MismatchedEndpoints";
    case ErrorCode::DivergentAverage: return "DivergentAverage";
    case ErrorCode::OutOfSpan: return "OutOfSpan";
    case ErrorCode::TooFewPeaks: return "TooFewPeaks";
    case ErrorCode::EnergyBelowMinimum: return "EnergyBelowMinimum";
    case ErrorCode::EnergyNotBracketed: return "EnergyNotBracketed";
    case ErrorCode::ZeroActionTarget: return "ZeroActionTarget";
    case ErrorCode::BracketNotFound: return "BracketNotFound";
    case ErrorCode::InvalidCharge: return "InvalidCharge";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivergentAverage:
    case ErrorCode::TooFewPeaks:
    case ErrorCode::EnergyBelowMinimum:
    case ErrorCode::EnergyNotBracketed:
    case ErrorCode::BracketNotFound:
    case ErrorCode::NotConverged:
      return true;
    default:
      return false;
  }
}

}  // namespace phasekit
