#pragma once

#include <stdexcept>
#include <string>

namespace plueckerlab {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ill-formed data: mixed fields, inconsistent shapes, bad serialized input.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

// Operands whose ambient dimension or degree do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Parameters outside the range where a statement is claimed (e.g. m < 3).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace plueckerlab
