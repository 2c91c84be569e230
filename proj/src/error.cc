#include "ltr/error.h"

namespace ltr {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidComponent: return "InvalidComponent";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::UnknownRoot: return "UnknownRoot";
    case ErrorKind::StateLimitExceeded: return "StateLimitExceeded";
    case ErrorKind::EmptyProjection: return "EmptyProjection";
    case ErrorKind::NotTwoLevel: return "NotTwoLevel";
    case ErrorKind::EmptyReduction: return "EmptyReduction";
    case ErrorKind::InvalidWitness: return "InvalidWitness";
    case ErrorKind::OracleTooLarge: return "OracleTooLarge";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Error";
}

}  // namespace ltr
