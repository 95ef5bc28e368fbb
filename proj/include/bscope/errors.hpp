#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bscope {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (unknown point, spec mismatch).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed text; `position()` is the byte offset where parsing stopped.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A configured size cap would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A word-metric query needs a larger window radius than the one built.
class OutOfWindowError : public Error {
 public:
  using Error::Error;
};

/// An object could not be built because its invariants do not hold.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// An operation precondition that depends on computed data failed.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace bscope
