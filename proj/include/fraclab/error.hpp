#pragma once

#include <stdexcept>
#include <string>

namespace fraclab {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An input fell outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap (cell count, pair count, ...) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A referenced element (word, map, file) does not exist.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// The operation is out of scope for this implementation.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace fraclab
