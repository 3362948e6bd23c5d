#pragma once

#include <stdexcept>
#include <string>

namespace mpw {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error("division by zero: " + what) {}
};

/// A documented precondition of an operation was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid user configuration; `field` names the offending input.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& msg)
      : Error(field + ": " + msg), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Request is well formed but outside the supported range (type, rank, group size).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace mpw
