#pragma once

#include <stdexcept>
#include <string>

namespace secinvest {

// Base of every library error. The CLI maps each subclass to an exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A scenario or document violates a domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed arguments to an operation (non-finite matrix, negative budget...).
class InputError : public Error {
 public:
  using Error::Error;
};

// A problem exceeds the supported size of a solver.
class SizingError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace secinvest
