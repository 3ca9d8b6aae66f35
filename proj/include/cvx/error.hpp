#ifndef CVX_ERROR_HPP
#define CVX_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cvx {

enum class ErrorCode {
  DegenerateInput,
  Empty,
  Unbounded,
  DimensionMismatch,
  NegativeScale,
  ZeroDirection,
  NumericalResidue,
  MissingDirection,
  GreatSubsphere,
  CentroidNonzero,
  NoConvergence,
  NonPositive,
  NotPositiveDefinite,
  TooLarge,
  SchemaError,
  InvariantViolation,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::Empty: return "Empty";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NegativeScale: return "NegativeScale";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::NumericalResidue: return "NumericalResidue";
    case ErrorCode::MissingDirection: return "MissingDirection";
    case ErrorCode::GreatSubsphere: return "GreatSubsphere";
    case ErrorCode::CentroidNonzero: return "CentroidNonzero";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// All library failures are reported through this exception; `code()` is the
/// machine-readable reason.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cvx

#endif
