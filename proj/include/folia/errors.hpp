#pragma once

#include <stdexcept>
#include <string>

namespace folia {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operands were built over different variable contexts.
class ContextMismatch : public Error {
public:
  using Error::Error;
};

/// A denominator vanished while specializing parameters, or a division by zero.
class PoleError : public Error {
public:
  using Error::Error;
};

/// Vector length, index or point arity does not match the context.
class ArityError : public Error {
public:
  using Error::Error;
};

/// Input size beyond the guard of an exponential-cost routine.
class UnsupportedSize : public Error {
public:
  using Error::Error;
};

/// Precondition violated (missing cached basis, empty input, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

} // namespace folia
