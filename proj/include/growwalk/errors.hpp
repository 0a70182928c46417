#pragma once

#include <stdexcept>
#include <string>

namespace growwalk {

/// Index or size outside the admissible range (round index, order, vertex).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Invalid user configuration: unknown family, malformed schedule, violated
/// parameter constraint. The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation was refused because it would exceed a configured resource
/// cap (dense order, trajectory length).
class ResourceError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// The chain does not have the structure an operation needs
/// (reducible kernel, zero stationary mass).
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation
/// (zero stationary entry, non-reversible kernel where reversibility is required).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Iterative method failed to converge.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace growwalk
