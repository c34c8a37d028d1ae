#pragma once

#include <stdexcept>
#include <string>

namespace vdw {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (invalid scene, order, angle...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Quadrature or series failed to reach the requested accuracy, or produced
/// a non-finite value.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

/// A scaled special-function mantissa left the double range.
class OverflowError : public Error {
public:
  using Error::Error;
};

/// Configuration text rejected by the parser. Line 0 means "not tied to a line".
class ConfigError : public Error {
public:
  ConfigError(int line, std::string key, const std::string &message)
      : Error(message), line_(line), key_(std::move(key)) {}

  int line() const noexcept { return line_; }
  const std::string &key() const noexcept { return key_; }

private:
  int line_;
  std::string key_;
};

} // namespace vdw
