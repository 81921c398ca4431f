#include "charp/error.hpp"

namespace charp {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ExponentOverflow: return "ExponentOverflow";
    case ErrorKind::PrecisionMismatch: return "PrecisionMismatch";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::SizeBound: return "SizeBound";
    case ErrorKind::NotInRing: return "NotInRing";
    case ErrorKind::StreamsAgree: return "StreamsAgree";
    case ErrorKind::NotSolid: return "NotSolid";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace charp
