#pragma once

#include <stdexcept>
#include <string>

namespace ergo {

enum class ErrorCode {
  FormatError,
  MissingLabel,
  GapTooLong,
  NonMonotonic,
  OutOfRange,
  ValueOutOfRange,
  DegenerateFrame,
  DegenerateSegment,
  DegenerateQuad,
  NotInteriorNode,
  NonPositiveArea,
  NonPositiveRadius,
  NoRoot,
  NumericalFailure,
  NoConvergence,
  EmptyBaseline,
  ProtocolMismatch,
  WindowTooShort,
  InvalidSpec,
  ConfigError,
  IoError,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::MissingLabel: return "MissingLabel";
    case ErrorCode::GapTooLong: return "GapTooLong";
    case ErrorCode::NonMonotonic: return "NonMonotonic";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::DegenerateQuad: return "DegenerateQuad";
    case ErrorCode::NotInteriorNode: return "NotInteriorNode";
    case ErrorCode::NonPositiveArea: return "NonPositiveArea";
    case ErrorCode::NonPositiveRadius: return "NonPositiveRadius";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::EmptyBaseline: return "EmptyBaseline";
    case ErrorCode::ProtocolMismatch: return "ProtocolMismatch";
    case ErrorCode::WindowTooShort: return "WindowTooShort";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

// All analysis errors carry a stable machine-readable code plus a human message.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace ergo
