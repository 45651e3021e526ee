#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace oscspec {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent input parameters.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of a function (singular endpoint, turning point).
class DomainError : public Error {
 public:
  using Error::Error;
};

class PoleEvaluationError : public Error {
 public:
  explicit PoleEvaluationError(std::complex<double> pole);
  std::complex<double> pole() const noexcept { return pole_; }

 private:
  std::complex<double> pole_;
};

/// A square-root radicand of the two-term condition is negative.
class NoClassicalRegionError : public Error {
 public:
  NoClassicalRegionError(std::string radicand, double value);
  const std::string& radicand() const noexcept { return radicand_; }
  double value() const noexcept { return value_; }

 private:
  std::string radicand_;
  double value_;
};

class NoBoundStateError : public Error {
 public:
  using Error::Error;
};

/// Raised by strict branch tracking when Π² rotates by more than π/2 in one step.
class BranchStepTooLarge : public Error {
 public:
  BranchStepTooLarge(std::complex<double> from, std::complex<double> to, double phase_jump);
  std::complex<double> from() const noexcept { return from_; }
  std::complex<double> to() const noexcept { return to_; }
  double phase_jump() const noexcept { return phase_jump_; }

 private:
  std::complex<double> from_;
  std::complex<double> to_;
  double phase_jump_;
};

class QuadratureFailure : public Error {
 public:
  QuadratureFailure(std::complex<double> center, double radius, long samples, double last_change);
  std::complex<double> center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  long samples() const noexcept { return samples_; }
  double last_change() const noexcept { return last_change_; }

 private:
  std::complex<double> center_;
  double radius_;
  long samples_;
  double last_change_;
};

/// The radial grid is too coarse to resolve the node sequence.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

}  // namespace oscspec
