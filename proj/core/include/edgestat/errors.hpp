#ifndef EDGESTAT_ERRORS_HPP
#define EDGESTAT_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace edgestat {

/// Failure categories raised by the numerical core.
enum class ErrorCode {
  NonConvex,
  NoConvergence,
  EndpointsOutsideDomain,
  QuadratureFailure,
  QuadratureUnstable,
  SeriesInstability,
  GridTooCoarse,
  Underflow,
  OutOfRange,
  DomainError,
  DefinitenessViolation,
  ToleranceExceeded,
  EffectiveSampleSizeTooSmall,
  InsufficientTailSamples,
  InvariantViolation,
};

std::string_view to_string(ErrorCode code) noexcept;

/// A numerical routine could not deliver its contract.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Malformed user input (field definitions, configuration files).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonConvex: return "NonConvex";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::EndpointsOutsideDomain: return "EndpointsOutsideDomain";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::QuadratureUnstable: return "QuadratureUnstable";
    case ErrorCode::SeriesInstability: return "SeriesInstability";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::Underflow: return "Underflow";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DefinitenessViolation: return "DefinitenessViolation";
    case ErrorCode::ToleranceExceeded: return "ToleranceExceeded";
    case ErrorCode::EffectiveSampleSizeTooSmall: return "EffectiveSampleSizeTooSmall";
    case ErrorCode::InsufficientTailSamples: return "InsufficientTailSamples";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace edgestat

#endif  // EDGESTAT_ERRORS_HPP
