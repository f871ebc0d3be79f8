#pragma once

#include <stdexcept>
#include <string>

namespace coxeter {

enum class ErrorKind {
  NonSymmetric,
  BadDiagonal,
  BadOffDiagonal,
  NotSquare,
  InternalDisagreement,
  NumericAmbiguity,
  TooLarge,
  NotHyperbolicPlane,
  DegenerateInput,
  ParseError,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSymmetric: return "NonSymmetric";
    case ErrorKind::BadDiagonal: return "BadDiagonal";
    case ErrorKind::BadOffDiagonal: return "BadOffDiagonal";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::InternalDisagreement: return "InternalDisagreement";
    case ErrorKind::NumericAmbiguity: return "NumericAmbiguity";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotHyperbolicPlane: return "NotHyperbolicPlane";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for errors caused by malformed user input rather than computation.
  bool is_validation() const noexcept {
    return kind_ == ErrorKind::NonSymmetric || kind_ == ErrorKind::BadDiagonal ||
           kind_ == ErrorKind::BadOffDiagonal || kind_ == ErrorKind::NotSquare ||
           kind_ == ErrorKind::ParseError || kind_ == ErrorKind::NotHyperbolicPlane ||
           kind_ == ErrorKind::DegenerateInput;
  }

 private:
  ErrorKind kind_;
};

}  // namespace coxeter
