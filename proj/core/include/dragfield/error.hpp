#pragma once

#include <stdexcept>
#include <string>

namespace dragfield {

/// Input violates a documented precondition (bad parameter, dimension
/// mismatch, handle outside the mask, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// File or stream could not be read, written, or decoded.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dragfield
