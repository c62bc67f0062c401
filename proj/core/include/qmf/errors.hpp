#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qmf {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Requested truncation would exceed the configured work limits.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A self-consistency check inside the library failed; indicates a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Iterative procedure stopped before reaching its target. Carries the best
// available estimate so callers can decide whether it is usable.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::complex<double> best, double bound)
      : std::runtime_error(what), best_estimate_(best), error_bound_(bound) {}

  std::complex<double> best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  std::complex<double> best_estimate_;
  double error_bound_;
};

}  // namespace qmf
