#pragma once

#include <stdexcept>
#include <string>

namespace dpres {

/// Base of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent setup: mismatched rings or fields, bad moduli, malformed shapes.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input text that does not follow the .dpm grammar, or violates homogeneity.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition failed (even n for selfdual resolutions, zero modules, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace dpres
