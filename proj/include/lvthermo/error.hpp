#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lvthermo {

/// Failure categories surfaced by the numerical modules. The CLI reports
/// the category name verbatim, so names are stable.
enum class ErrorKind {
  InvalidArgument,
  EnergyBelowMinimum,
  StepSizeUnderflow,
  PeriodNotFound,
  BoundaryState,
  StepRejectionLimit,
  FixedPointNotFound,
  SingularCoefficient,
};

[[nodiscard]] constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument:
      return "InvalidArgument";
    case ErrorKind::EnergyBelowMinimum:
      return "EnergyBelowMinimum";
    case ErrorKind::StepSizeUnderflow:
      return "StepSizeUnderflow";
    case ErrorKind::PeriodNotFound:
      return "PeriodNotFound";
    case ErrorKind::BoundaryState:
      return "BoundaryState";
    case ErrorKind::StepRejectionLimit:
      return "StepRejectionLimit";
    case ErrorKind::FixedPointNotFound:
      return "FixedPointNotFound";
    case ErrorKind::SingularCoefficient:
      return "SingularCoefficient";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::string_view name() const noexcept { return to_string(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace lvthermo
