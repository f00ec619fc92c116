#pragma once

#include <stdexcept>
#include <string>

namespace polywrap {

enum class ErrorKind {
  DegenerateInput,
  DegenerateTriangle,
  InvalidPointSet,
  InvalidWrap,
  TwangPreconditionViolated,
  NonSimpleResult,
  VisibilityViolated,
  ReflexSideViolated,
  StuckCascade,
  CascadeCapExceeded,
  ReversalMismatch,
  PreconditionViolated,
  SelectionFailure,
  GenerationFailed,
  TooLarge,
  InvariantViolated,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::InvalidPointSet: return "InvalidPointSet";
    case ErrorKind::InvalidWrap: return "InvalidWrap";
    case ErrorKind::TwangPreconditionViolated: return "TwangPreconditionViolated";
    case ErrorKind::NonSimpleResult: return "NonSimpleResult";
    case ErrorKind::VisibilityViolated: return "VisibilityViolated";
    case ErrorKind::ReflexSideViolated: return "ReflexSideViolated";
    case ErrorKind::StuckCascade: return "StuckCascade";
    case ErrorKind::CascadeCapExceeded: return "CascadeCapExceeded";
    case ErrorKind::ReversalMismatch: return "ReversalMismatch";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::SelectionFailure: return "SelectionFailure";
    case ErrorKind::GenerationFailed: return "GenerationFailed";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvariantViolated: return "InvariantViolated";
  }
  return "Unknown";
}

/// Single exception type for the library; the kind says what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace polywrap
