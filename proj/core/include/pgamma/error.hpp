#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pgamma {

enum class ErrorCode {
  ZeroNotRepresentable,
  CancellationToZero,
  SingularAtMinusOne,
  NonFinite,
  PoleAtOne,
  NearExclusionPoint,
  MaxTermsExceeded,
  DomainError,
  PoleAtNonpositiveInteger,
  PreconditionViolation,
  RegimeViolation,
  InvalidOverride,
  ProductTooLarge,
  FactorPole,
  DenominatorPole,
  HypothesisViolation,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure in the library is reported through this one exception type;
// callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pgamma
