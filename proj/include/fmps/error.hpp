#pragma once

#include <stdexcept>
#include <string>

namespace fmps {

enum class ErrorCode {
  ZeroFunction,
  NonFinite,
  DimensionMismatch,
  InvalidTolerance,
  DegreeCapExceeded,
  CapExceeded,
  InvalidCut,
  NotNormalized,
  OutOfRange,
  SchemaVersionMismatch,
  MalformedFile,
  IoFailure,
  MissingData,
  ParseError,
};

constexpr const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroFunction: return "ZeroFunction";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidTolerance: return "InvalidTolerance";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::InvalidCut: return "InvalidCut";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::MissingData: return "MissingData";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Library-wide exception. `code()` identifies the failure class so callers
/// (and the CLI exit-code mapping) can react without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fmps
