#pragma once

#include <stdexcept>
#include <string>

namespace epi {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the supported domain (bad degree, wrong field, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A truncated computation did not carry enough precision.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// A structural identity failed to hold on the computed data.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed or unexpected document at an I/O boundary.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace epi
