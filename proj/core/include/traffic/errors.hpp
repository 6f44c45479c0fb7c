#pragma once

#include <stdexcept>
#include <string>

namespace traffic {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A quantity diverges at the requested state (e.g. relaxation time at w <= 1).
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Quadrature failed to reach its accuracy target; carries the best estimate.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double estimate, double achieved_error)
      : std::runtime_error(what), estimate_(estimate), achieved_error_(achieved_error) {}
  double estimate() const { return estimate_; }
  double achieved_error() const { return achieved_error_; }

 private:
  double estimate_;
  double achieved_error_;
};

/// Configuration file could not be parsed or violates an invariant.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A time step produced an inadmissible field (NaN or negative density).
class StepError : public std::runtime_error {
 public:
  StepError(const std::string& what, std::size_t cell, double time, long step)
      : std::runtime_error(what), cell_(cell), time_(time), step_(step) {}
  std::size_t cell() const { return cell_; }
  double time() const { return time_; }
  long step() const { return step_; }

 private:
  std::size_t cell_;
  double time_;
  long step_;
};

/// File output failure; message carries the path and cause.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace traffic
