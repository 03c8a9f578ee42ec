#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace edfn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An instance exceeds a configured size cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// A mathematically meaningless request (empty family, p outside the valid range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The operation is well-posed but not supported for this input.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Two independent routes to the same answer disagree.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input. `offset()` is the byte offset of the offending character.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace edfn
