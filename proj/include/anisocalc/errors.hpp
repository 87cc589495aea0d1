#pragma once

#include <stdexcept>
#include <string>

namespace anisocalc {

enum class ErrorKind {
  Unsupported,
  NotIdentifiable,
  HypothesisViolation,
  NotAnIntersectionForm,
  IncompatibleSpaces,
  BadSlice,
  NoInterpolationRule,
  ClosureFromUncovered,
  InfeasibleRange,
  WrongScale,
  ResolutionError,
  NotCovered,
  InvalidArgument,
  ParseError,
};

const char* to_string(ErrorKind kind);

/// Every engine failure is reported through this type; `anchor` names the
/// rule whose hypothesis was violated, if there is one.
class EngineError : public std::runtime_error {
 public:
  EngineError(ErrorKind kind, const std::string& message, std::string anchor = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& anchor() const noexcept { return anchor_; }

 private:
  ErrorKind kind_;
  std::string anchor_;
};

class ParseError : public EngineError {
 public:
  ParseError(const std::string& message, int line, int column);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace anisocalc
