#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eegpipe {

enum class ErrorCode {
  WrongRowCount,
  WrongColumnCount,
  NonNumericField,
  PowerOutOfRange,
  InvalidSession,
  EmptyCorpus,
  EmptyMask,
  DimensionMismatch,
  InvalidHyperParams,
  LengthMismatch,
  TooShort,
  TooFewSessions,
  IoFailure,
  UnsupportedHyperParam,
  InvalidHyperParam,
  SingularCovariance,
  ClassTooSmall,
  InvalidGrid,
  InvalidDataset,
  InvalidConfig,
};

std::string_view error_code_name(ErrorCode code);

// Domain error carrying a machine-checkable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace eegpipe
