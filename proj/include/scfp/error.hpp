#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scfp {

/// Invalid problem configuration: bad parameters, schedule values outside
/// their admissible ranges, malformed config files. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
  ConfigError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  /// 1-based source line, or 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

/// Arithmetic breakdown during a run. Maps to CLI exit code 3.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// A non-finite coordinate appeared where a point was being formed.
class NonFiniteError : public NumericalError {
 public:
  explicit NonFiniteError(const std::string& what) : NumericalError(what) {}
};

/// The constraint set handed to a projection is empty (or has collapsed
/// numerically).
class InfeasibleSetError : public NumericalError {
 public:
  explicit InfeasibleSetError(const std::string& what) : NumericalError(what) {}
};

class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace scfp
