#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sgmc {

enum class ErrorKind {
  kCapExceeded,
  kDivisionByZero,
  kZeroDenominator,
  kNonUnitDenominator,
  kPoleAtLimit,
  kStarOfUnit,
  kAmbiguousExpression,
  kNotLeftZero,
  kResidualMassNonzero,
  kVerificationFailed,
  kNotUsp,
  kPathNotInGraph,
  kUnknownVertexWord,
  kSingular,
  kInvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// command-line front end can map it onto a stable exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kCapExceeded: return "CapExceeded";
    case ErrorKind::kDivisionByZero: return "DivisionByZero";
    case ErrorKind::kZeroDenominator: return "ZeroDenominator";
    case ErrorKind::kNonUnitDenominator: return "NonUnitDenominator";
    case ErrorKind::kPoleAtLimit: return "PoleAtLimit";
    case ErrorKind::kStarOfUnit: return "StarOfUnit";
    case ErrorKind::kAmbiguousExpression: return "AmbiguousExpression";
    case ErrorKind::kNotLeftZero: return "NotLeftZero";
    case ErrorKind::kResidualMassNonzero: return "ResidualMassNonzero";
    case ErrorKind::kVerificationFailed: return "VerificationFailed";
    case ErrorKind::kNotUsp: return "NotUsp";
    case ErrorKind::kPathNotInGraph: return "PathNotInGraph";
    case ErrorKind::kUnknownVertexWord: return "UnknownVertexWord";
    case ErrorKind::kSingular: return "Singular";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace sgmc
