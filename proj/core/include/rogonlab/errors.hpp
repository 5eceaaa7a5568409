#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rogonlab {

/// A user-supplied parameter violates a documented precondition.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The carrier e^{ikS} is not periodic on the simulation domain.
class NonPeriodicCarrier : public InvalidParameter {
 public:
  NonPeriodicCarrier(double k, double L, double nearest_k);

  double requested_k() const noexcept { return k_; }
  double nearest_k() const noexcept { return nearest_k_; }

 private:
  double k_;
  double nearest_k_;
};

/// The two-rogon denominator H2 was found non-positive. This signals a
/// defect in the polynomial transcription, never bad user input.
class SingularityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A simulation produced a non-finite value.
class NumericalAbort : public std::runtime_error {
 public:
  NumericalAbort(std::size_t step, double t);

  std::size_t step() const noexcept { return step_; }
  double time() const noexcept { return t_; }

 private:
  std::size_t step_;
  double t_;
};

}  // namespace rogonlab
