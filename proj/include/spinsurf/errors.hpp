#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spinsurf {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Grid/shape contract violations: mismatched grids, too-small extents,
/// y-derivatives on a 1-D grid.
class GridError : public Error {
public:
  using Error::Error;
};

class InvalidSpinField : public Error {
public:
  using Error::Error;
};

/// A coefficient set that violates a model's required structure.
class InvalidCoefficients : public Error {
public:
  using Error::Error;
};

class MissingParameter : public Error {
public:
  using Error::Error;
};

/// Base for numeric failures (CLI exit code 3).
class NumericError : public Error {
public:
  using Error::Error;
};

class NearZeroNorm : public NumericError {
public:
  NearZeroNorm(int i, int j)
      : NumericError("near-zero norm at node (" + std::to_string(i) + "," +
                     std::to_string(j) + ")"),
        i(i), j(j) {}
  int i, j;
};

class DegenerateTangent : public NumericError {
public:
  DegenerateTangent(int i, int j)
      : NumericError("degenerate tangent plane at node (" + std::to_string(i) +
                     "," + std::to_string(j) + ")"),
        i(i), j(j) {}
  int i, j;
};

class NonZeroMeanSource : public NumericError {
public:
  NonZeroMeanSource(double mean, double max_abs)
      : NumericError("Poisson source has non-zero mean " + std::to_string(mean) +
                     " (max |rhs| = " + std::to_string(max_abs) + ")"),
        mean(mean) {}
  double mean;
};

class NonConvergence : public NumericError {
public:
  NonConvergence(int iterations, double residual)
      : NumericError("solver did not converge after " + std::to_string(iterations) +
                     " iterations (residual " + std::to_string(residual) + ")"),
        iterations(iterations), residual(residual) {}
  int iterations;
  double residual;
};

class Blowup : public NumericError {
public:
  explicit Blowup(std::size_t step)
      : NumericError("non-finite value produced at step " + std::to_string(step)),
        step(step) {}
  std::size_t step;
};

/// Time step exceeds the explicit stability bound and no override was given.
class StabilityError : public Error {
public:
  using Error::Error;
};

class UnknownModel : public Error {
public:
  explicit UnknownModel(const std::string& name)
      : Error("unknown model '" + name + "'"), name(name) {}
  std::string name;
};

class UnimplementedModel : public Error {
public:
  UnimplementedModel(const std::string& name, const std::string& reason)
      : Error("model " + name + " is not implemented: " + reason), name(name) {}
  std::string name;
};

class PhononAbsent : public Error {
public:
  explicit PhononAbsent(const std::string& name)
      : Error("model " + name + " has no phonon equation (0-type)") {}
};

/// Malformed input file; `line` is 1-based.
class FormatError : public Error {
public:
  FormatError(std::size_t line, const std::string& what)
      : Error("format error at line " + std::to_string(line) + ": " + what),
        line(line) {}
  std::size_t line;
};

class NonFiniteValue : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

/// Configuration errors (CLI exit code 2).
class ConfigError : public Error {
public:
  using Error::Error;
};

class UnknownKey : public ConfigError {
public:
  explicit UnknownKey(const std::string& key)
      : ConfigError("unknown key '" + key + "'"), key(key) {}
  std::string key;
};

class TypeError : public ConfigError {
public:
  TypeError(const std::string& key, const std::string& expected)
      : ConfigError("key '" + key + "' expects a value of type " + expected),
        key(key), expected(expected) {}
  std::string key, expected;
};

class MissingRequired : public ConfigError {
public:
  explicit MissingRequired(const std::string& key)
      : ConfigError("missing required key '" + key + "'"), key(key) {}
  std::string key;
};

} // namespace spinsurf
