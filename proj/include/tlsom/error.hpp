#pragma once

#include <stdexcept>
#include <string>

namespace tlsom {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, presets, overrides or configuration files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed input data (strain-field files).
class ParseError : public Error {
 public:
  enum class Kind { io, missing_material, missing_header, malformed_row, nonpositive_volume, empty };

  ParseError(Kind kind, const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), kind_(kind), line_(line) {}
  Kind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

/// Violated precondition of a computation (bad cutoff, empty field, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Linear-algebra or integration failure.
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace tlsom
