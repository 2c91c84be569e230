#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ltr {

enum class ErrorKind {
  InvalidComponent,
  NotATree,
  UnknownRoot,
  StateLimitExceeded,
  EmptyProjection,
  NotTwoLevel,
  EmptyReduction,
  InvalidWitness,
  OracleTooLarge,
  ParseError,
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace ltr
