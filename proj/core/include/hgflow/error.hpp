#pragma once

#include <stdexcept>
#include <string>

namespace hgflow {

enum class ErrorKind {
  InvalidArgument,
  ResonantGamma,
  ConstraintViolation,
  DomainError,
  SingularPoint,
  PathTooClose,
  StepUnderflow,
  NotReducible,
  ZeroDenominator,
  ZeroGauge,
  PoleHit,
  ZeroTheta,
  ResonantShift,
  VanishingDenominator,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (and the CLI)
// can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hgflow
