#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace phasekit {

enum class ErrorCode {
  InvalidArgument,
  PathIntersectsSolenoidCore,
  EmptyList,
  MismatchedEndpoints,
  DivergentAverage,
  OutOfSpan,
  TooFewPeaks,
  EnergyBelowMinimum,
  EnergyNotBracketed,
  ZeroActionTarget,
  BracketNotFound,
  InvalidCharge,
  NotConverged,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorCode code) noexcept;

// True for failures of a numerical procedure on otherwise valid input.
bool is_numerical(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace phasekit
