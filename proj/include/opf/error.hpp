#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace opf {

enum class ErrorCode {
  PreconditionViolated,
  TruncationTooLow,
  UnsupportedParams,
  ZeroMu,
  NonpositiveLambda,
  DegenerateQ,
  InvalidCofactor,
  PoleAtPoint,
  TrajectoryLeftDomain,
  IntegrationFailure,
  StepFailure,
  NotApplicable,
  SeriesInconclusive,
  RuleUndecided,
  NotACriticalPoint,
  NonIsolatedCritSet,
  IdenticallyZero,
  DegenerateC2,
  NotHypergeometric,
  SingularSamplePoint,
  SingularAtPMOne,
  ParseError,
};

std::string_view errorName(ErrorCode code);

/// All library failures carry a code so the CLI can map them onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(errorName(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace opf
