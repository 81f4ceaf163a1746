#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hapbench {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// User-side problems: bad configuration, bad arguments, malformed files.
/// The CLI maps these to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Failures of a numeric operation on valid input. CLI exit code 3.
class NumericError : public Error {
 public:
  using Error::Error;
};

class InvalidBand : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class ValidationError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class ParseError : public ConfigError {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : ConfigError(file + ":" + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class PoleOnGrid : public NumericError {
 public:
  using NumericError::NumericError;
};

class NoInteriorExtremum : public NumericError {
 public:
  using NumericError::NumericError;
};

class NonFinite : public NumericError {
 public:
  using NumericError::NumericError;
};

class DegenerateInput : public NumericError {
 public:
  using NumericError::NumericError;
};

class DivisionDomain : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace hapbench
