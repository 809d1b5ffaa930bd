#pragma once

#include <stdexcept>
#include <string>

namespace specgrad {

/// Base class for all specgrad errors.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid analysis or optimizer configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Mismatched lengths or shapes between paired inputs.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Malformed file contents (bad magic, truncated payload, bad token).
class FormatError : public Error {
public:
  using Error::Error;
};

/// Well-formed file in a layout we do not handle (stereo, non-16-bit, ...).
class UnsupportedFormatError : public Error {
public:
  using Error::Error;
};

/// Filesystem-level failure.
class IoError : public Error {
public:
  using Error::Error;
};

/// Input that is degenerate for the requested operation (constant signal,
/// zero-energy reference, ...).
class DegenerateInputError : public Error {
public:
  using Error::Error;
};

/// A function evaluation produced a non-finite value.
class EvaluationError : public Error {
public:
  using Error::Error;
};

}  // namespace specgrad
