#pragma once

#include <stdexcept>
#include <string>

namespace phsolve {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid parameters, malformed configuration, violated preconditions.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// Function evaluation failed (overflow at an extreme argument).
class EvalError : public Error {
 public:
  explicit EvalError(const std::string& msg) : Error(msg) {}
};

/// Operator assembly hit an overflow guard (exponent too large, non-finite entry).
class ConstructionError : public Error {
 public:
  explicit ConstructionError(const std::string& msg) : Error(msg) {}
};

/// Eigensolver failure or other numerical breakdown.
class SolverError : public Error {
 public:
  explicit SolverError(const std::string& msg) : Error(msg) {}
};

}  // namespace phsolve
