#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace enercast {

enum class ErrorKind {
  Usage,
  MalformedLine,
  EmptyInput,
  EmptyFrame,
  InsufficientRows,
  ZeroVariance,
  ZeroVarianceTarget,
  LengthMismatch,
  FrameTooShort,
  DegenerateSplit,
  CannotDropTarget,
  UnknownVariable,
  KTooLarge,
  ShapeMismatch,
  DivergedLoss,
  InfeasibleCorrelation,
  AlgorithmSetMismatch,
  StaleArtifact,
  IoFailure,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

// CLI exit-code buckets: 1 usage, 2 data error, 3 numeric failure.
inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage:
      return 1;
    case ErrorKind::ZeroVariance:
    case ErrorKind::ZeroVarianceTarget:
    case ErrorKind::DivergedLoss:
    case ErrorKind::InfeasibleCorrelation:
      return 3;
    default:
      return 2;
  }
}

}  // namespace enercast
