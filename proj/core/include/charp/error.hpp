#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace charp {

enum class ErrorKind {
  NotPrime,
  DegreeTooLarge,
  ContextMismatch,
  SyntaxError,
  ExponentOverflow,
  PrecisionMismatch,
  PrecisionExhausted,
  SizeBound,
  NotInRing,
  StreamsAgree,
  NotSolid,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error(ErrorKind::SyntaxError,
              message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Raised when a t-adic order cannot be certified below the precision cap.
// Usually means the series images satisfy an algebraic relation.
class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(std::size_t last_precision)
      : Error(ErrorKind::PrecisionExhausted,
              "order not certified up to precision " +
                  std::to_string(last_precision)),
        last_precision_(last_precision) {}

  std::size_t last_precision() const noexcept { return last_precision_; }

 private:
  std::size_t last_precision_;
};

}  // namespace charp
