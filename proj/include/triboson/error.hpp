#pragma once

#include <stdexcept>
#include <string>

namespace triboson {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the caller's input was violated.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An energy argument lies outside the region where the requested function is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Root finder was handed an interval without a sign change.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// Iterative protocol hit its cap without meeting the stopping rule.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

/// Requested problem size is above the desk-scale cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace triboson
