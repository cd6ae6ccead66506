#pragma once

#include <stdexcept>
#include <string>

namespace soco {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A decision lies outside its decision space.
class InvalidDecision : public Error {
 public:
  using Error::Error;
};

/// A hyperparameter or closed-form precondition is out of range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The instance violates an assumption the algorithm relies on
/// (e.g. a non-convex cost handed to a 1-D convex method).
class ModelViolation : public Error {
 public:
  using Error::Error;
};

/// No finite-cost point exists for a filtering step.
class InfeasibleRound : public Error {
 public:
  using Error::Error;
};

/// Exact solvers refuse spaces above their size guard.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or instance file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace soco
