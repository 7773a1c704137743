#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace modcirc {

enum class ErrorCode {
  InvalidModulus,
  InvalidArgument,
  InvalidAssignment,
  MalformedCircuit,
  TooLarge,
  NotRigid,
  InvalidBlock,
  IncompatibleModulus,
  UnsupportedModulus,
  PreconditionFailed,
  Undefined,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to an exit status and a stable name.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidAssignment: return "InvalidAssignment";
    case ErrorCode::MalformedCircuit: return "MalformedCircuit";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotRigid: return "NotRigid";
    case ErrorCode::InvalidBlock: return "InvalidBlock";
    case ErrorCode::IncompatibleModulus: return "IncompatibleModulus";
    case ErrorCode::UnsupportedModulus: return "UnsupportedModulus";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::Undefined: return "Undefined";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace modcirc
