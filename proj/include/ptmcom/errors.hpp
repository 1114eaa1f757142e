#pragma once

#include <stdexcept>
#include <string>

namespace ptmcom {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch: non-square input, unsupported size.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Bad argument to a pure function (identical modes, empty polynomial, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A SystemParams invariant does not hold. Carries the offending field key.
class ParameterError : public Error {
 public:
  ParameterError(std::string key, const std::string& what)
      : Error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Iteration cap hit, singular system, failed self-consistency, ...
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Vectorized Lyapunov operator is singular (an eigenvalue pair sums to zero).
class NoUniqueSolutionError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// Mean-field integration produced a non-finite state.
class DivergenceError : public NumericError {
 public:
  DivergenceError(double time, const std::string& what)
      : NumericError(what), time_(time) {}
  double blow_up_time() const noexcept { return time_; }

 private:
  double time_;
};

/// Covariance violates the uncertainty bound beyond tolerance.
class UnphysicalStateError : public NumericError {
 public:
  UnphysicalStateError(double margin, const std::string& what)
      : NumericError(what), margin_(margin) {}
  double margin() const noexcept { return margin_; }

 private:
  double margin_;
};

/// Two independent routes to the same verdict disagree.
class ConsistencyError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A function was called outside its domain (e.g. covariance of an unstable drift).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration file or flag. line() is 0 for command-line flags.
class ConfigError : public Error {
 public:
  using Error::Error;
  ConfigError(std::string key, int line, const std::string& what)
      : Error(what), key_(std::move(key)), line_(line) {}
  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }

 private:
  std::string key_;
  int line_ = 0;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ptmcom
