#include "eegpipe/error.hpp"

namespace eegpipe {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::WrongRowCount: return "WrongRowCount";
    case ErrorCode::WrongColumnCount: return "WrongColumnCount";
    case ErrorCode::NonNumericField: return "NonNumericField";
    case ErrorCode::PowerOutOfRange: return "PowerOutOfRange";
    case ErrorCode::InvalidSession: return "InvalidSession";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::EmptyMask: return "EmptyMask";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidHyperParams: return "InvalidHyperParams";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::TooFewSessions: return "TooFewSessions";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::UnsupportedHyperParam: return "UnsupportedHyperParam";
    case ErrorCode::InvalidHyperParam: return "InvalidHyperParam";
    case ErrorCode::SingularCovariance: return "SingularCovariance";
    case ErrorCode::ClassTooSmall: return "ClassTooSmall";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::InvalidDataset: return "InvalidDataset";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "UnknownError";
}

}  // namespace eegpipe
