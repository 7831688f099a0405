#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mhd1d {

/// Invalid configuration or CLI input. `key()` is the dotted key path when
/// the failure can be attributed to one.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string key, const std::string& msg)
      : std::runtime_error(key.empty() ? msg : key + ": " + msg), key_(std::move(key)) {}
  explicit ConfigError(const std::string& msg) : ConfigError("", msg) {}

  const std::string& key() const noexcept { return key_; }

private:
  std::string key_;
};

/// A step produced a nonpositive specific volume or temperature.
class PositivityFailure : public std::runtime_error {
public:
  PositivityFailure(const std::string& msg, std::size_t cell, double suggested_dt)
      : std::runtime_error(msg), cell_(cell), suggested_dt_(suggested_dt) {}

  std::size_t cell() const noexcept { return cell_; }
  double suggested_dt() const noexcept { return suggested_dt_; }

private:
  std::size_t cell_;
  double suggested_dt_;
};

/// The implicit heat solve did not reach its residual tolerance.
class IterationFailure : public std::runtime_error {
public:
  IterationFailure(const std::string& msg, int iterations, double residual)
      : std::runtime_error(msg), iterations_(iterations), residual_(residual) {}

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

private:
  int iterations_;
  double residual_;
};

/// A norm exponent pair outside the admissible family of its context.
class ConstraintError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An oracle was handed too little data (e.g. a single snapshot).
class InsufficientData : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Filesystem failure while reading or emitting outputs.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace mhd1d
