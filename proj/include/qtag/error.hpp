#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qtag {

enum class ErrorCode {
  InvalidArgument,
  NonPrime,
  NotPrimePower,
  InadmissiblePrime,
  NoQualifyingRoot,
  NotTwinPrimes,
  NotADifferenceSet,
  FieldTooLarge,
  LengthMismatch,
  EmptySupport,
  DuplicateCodeword,
  NotSelfSynchronizing,
  Infeasible,
  CapExceeded,
  GapTooShort,
  DigitOutOfRange,
  MalformedFile,
  VerificationMismatch,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every library failure carries a category so the CLI can map it to an exit
// code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qtag
