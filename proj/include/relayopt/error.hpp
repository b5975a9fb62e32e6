#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace relayopt {

enum class ErrorCode {
  // graph validation
  Loop,
  DuplicateEdge,
  DuplicateVertex,
  MissingTerminal,
  SameTerminals,
  DanglingEndpoint,
  UnknownVertex,
  UnknownEdge,
  InvalidInstruction,
  InvalidProbability,
  Parse,
  // domain
  InfiniteProtocol,
  NotInCfp,
  MultiEdge,
  EvenOrder,
  InvalidArgument,
  // resource guards
  GuardExceeded,
};

/// Broad class of an error; the CLI maps these onto exit codes.
enum class ErrorKind { Usage, Domain, Guard };

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Loop: return "loop";
    case ErrorCode::DuplicateEdge: return "duplicate_edge";
    case ErrorCode::DuplicateVertex: return "duplicate_vertex";
    case ErrorCode::MissingTerminal: return "missing_terminal";
    case ErrorCode::SameTerminals: return "same_terminals";
    case ErrorCode::DanglingEndpoint: return "dangling_endpoint";
    case ErrorCode::UnknownVertex: return "unknown_vertex";
    case ErrorCode::UnknownEdge: return "unknown_edge";
    case ErrorCode::InvalidInstruction: return "invalid_instruction";
    case ErrorCode::InvalidProbability: return "invalid_probability";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::InfiniteProtocol: return "infinite_protocol";
    case ErrorCode::NotInCfp: return "not_in_cfp";
    case ErrorCode::MultiEdge: return "multi_edge";
    case ErrorCode::EvenOrder: return "even_order";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::GuardExceeded: return "guard_exceeded";
  }
  return "unknown";
}

constexpr ErrorKind kind_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::InvalidArgument:
      return ErrorKind::Usage;
    case ErrorCode::GuardExceeded:
      return ErrorKind::Guard;
    default:
      return ErrorKind::Domain;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorKind kind() const noexcept { return kind_of(code_); }

 private:
  ErrorCode code_;
};

}  // namespace relayopt
