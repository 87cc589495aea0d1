#include "anisocalc/errors.hpp"

namespace anisocalc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::NotIdentifiable: return "NotIdentifiable";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::NotAnIntersectionForm: return "NotAnIntersectionForm";
    case ErrorKind::IncompatibleSpaces: return "IncompatibleSpaces";
    case ErrorKind::BadSlice: return "BadSlice";
    case ErrorKind::NoInterpolationRule: return "NoInterpolationRule";
    case ErrorKind::ClosureFromUncovered: return "ClosureFromUncovered";
    case ErrorKind::InfeasibleRange: return "InfeasibleRange";
    case ErrorKind::WrongScale: return "WrongScale";
    case ErrorKind::ResolutionError: return "ResolutionError";
    case ErrorKind::NotCovered: return "NotCovered";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

EngineError::EngineError(ErrorKind kind, const std::string& message, std::string anchor)
    : std::runtime_error(message), kind_(kind), anchor_(std::move(anchor)) {}

ParseError::ParseError(const std::string& message, int line, int column)
    : EngineError(ErrorKind::ParseError,
                  std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace anisocalc
