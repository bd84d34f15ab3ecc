#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qaperture {

/// Numerical failure that should map to exit code 1 at the CLI.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedOrder : public std::invalid_argument {
 public:
  explicit UnsupportedOrder(int order)
      : std::invalid_argument("bessel_j: unsupported order " + std::to_string(order)), order_(order) {}
  int order() const noexcept { return order_; }

 private:
  int order_;
};

/// Adaptive quadrature ran out of subdivision depth. Carries the best
/// estimate so callers can report it.
class NonConvergence : public NumericalError {
 public:
  NonConvergence(const std::string& what, std::complex<double> estimate, double error_bound)
      : NumericalError(what), estimate_(estimate), error_bound_(error_bound) {}
  std::complex<double> estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  std::complex<double> estimate_;
  double error_bound_;
};

class BracketError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IntegrationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class UndefinedCorrelation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Invalid configuration; `key()` names the offending entry.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace qaperture
