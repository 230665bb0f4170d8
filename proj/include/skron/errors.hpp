#pragma once

#include <stdexcept>
#include <string>

namespace skron {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies within pole_margin of a lattice point where the
/// evaluated function (or one of its factors) is singular.
class PoleProximity : public Error {
 public:
  using Error::Error;
};

/// Theta series truncated too early for the requested tolerance.
class TailTooLarge : public Error {
 public:
  using Error::Error;
};

/// Grassmann elements with incompatible coefficient rings were combined.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

/// gexp called on an element whose nilpotent part is not purely even.
class OddBodyUnsupported : public Error {
 public:
  using Error::Error;
};

/// An operation whose derivation needs a coefficient constraint was called
/// with coefficients that violate it.
class ConstraintViolated : public Error {
 public:
  using Error::Error;
};

/// A derivative beyond the supported jet depth was requested.
class DerivativeOrderExceeded : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace skron
