#pragma once

#include <stdexcept>
#include <string>

namespace qtensor {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: bad group spec, invalid Cayley table, bad JSON.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap was hit (order bound, relator cap, coset limit).
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Always indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qtensor
