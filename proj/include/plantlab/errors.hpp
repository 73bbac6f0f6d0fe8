#pragma once

#include <stdexcept>
#include <string>

namespace plantlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: out-of-range vertices, invalid probabilities, ...
class InputError : public Error {
 public:
  using Error::Error;
};

/// A search or enumeration guard was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// The requested operation is not defined for this input family.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Invalid or inconsistent configuration (schema violations, empty threshold windows).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A run failed as a whole (all trials discarded, conditioning too rare).
class ExecutionError : public Error {
 public:
  using Error::Error;
};

}  // namespace plantlab
