#include "pgamma/error.hpp"

namespace pgamma {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ZeroNotRepresentable: return "ZeroNotRepresentable";
    case ErrorCode::CancellationToZero: return "CancellationToZero";
    case ErrorCode::SingularAtMinusOne: return "SingularAtMinusOne";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::PoleAtOne: return "PoleAtOne";
    case ErrorCode::NearExclusionPoint: return "NearExclusionPoint";
    case ErrorCode::MaxTermsExceeded: return "MaxTermsExceeded";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::PoleAtNonpositiveInteger: return "PoleAtNonpositiveInteger";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::RegimeViolation: return "RegimeViolation";
    case ErrorCode::InvalidOverride: return "InvalidOverride";
    case ErrorCode::ProductTooLarge: return "ProductTooLarge";
    case ErrorCode::FactorPole: return "FactorPole";
    case ErrorCode::DenominatorPole: return "DenominatorPole";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
  }
  return "Unknown";
}

}  // namespace pgamma
