#include "qtag/error.hpp"

namespace qtag {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPrime: return "NonPrime";
    case ErrorCode::NotPrimePower: return "NotPrimePower";
    case ErrorCode::InadmissiblePrime: return "InadmissiblePrime";
    case ErrorCode::NoQualifyingRoot: return "NoQualifyingRoot";
    case ErrorCode::NotTwinPrimes: return "NotTwinPrimes";
    case ErrorCode::NotADifferenceSet: return "NotADifferenceSet";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptySupport: return "EmptySupport";
    case ErrorCode::DuplicateCodeword: return "DuplicateCodeword";
    case ErrorCode::NotSelfSynchronizing: return "NotSelfSynchronizing";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::GapTooShort: return "GapTooShort";
    case ErrorCode::DigitOutOfRange: return "DigitOutOfRange";
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::VerificationMismatch: return "VerificationMismatch";
  }
  return "Unknown";
}

}  // namespace qtag
