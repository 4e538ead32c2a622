#pragma once

#include <stdexcept>
#include <string>

namespace normlab {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Two vectors (or a vector and an operator) disagree on ambient dimension.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation requested a value the current arithmetic mode cannot
/// represent (e.g. an irrational l2 norm in exact mode).
class ModeError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition was violated by the caller.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The row mesh is too coarse to place a certificate cap; enlarging the
/// number of rows is the usual fix.
class CoverageError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration file or out-of-range experiment parameter.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace normlab
