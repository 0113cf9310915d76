#pragma once

#include <stdexcept>
#include <string>

namespace lgr {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid argument or unmet precondition (prime mismatch, bad truncation, ...).
struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// A quantity cannot be decided at the precision carried by the operands.
struct PrecisionError : Error {
  explicit PrecisionError(const std::string& msg) : Error(msg) {}
};

}  // namespace lgr
