#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdem {

// Root of every error raised by the library. Each subclass corresponds to one
// failure mode of the public operations; callers that only need a message can
// catch pdem::Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain (x <= -a, log_gamma(x <= 0), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// ModelParams construction rejected: carries the violated invariant in what().
class InvalidParams : public DomainError {
 public:
  using DomainError::DomainError;
};

class LevelOutOfRange : public Error {
 public:
  LevelOutOfRange(int n, int max_level)
      : Error("level n=" + std::to_string(n) + " outside 0.." + std::to_string(max_level)),
        n_(n),
        max_level_(max_level) {}
  int level() const { return n_; }
  int max_level() const { return max_level_; }

 private:
  int n_;
  int max_level_;
};

class BelowContinuum : public Error {
 public:
  using Error::Error;
};

// Series hit its term cap, or lost more digits to cancellation than the
// widest available precision can absorb.
class NonConvergence : public Error {
 public:
  using Error::Error;
};

// Lower parameter of 1F1 sits on a non-positive integer.
class PolePivot : public Error {
 public:
  using Error::Error;
};

// Result is finite in log space but does not fit a double.
class Overflow : public Error {
 public:
  using Error::Error;
};

class ConvergenceFailure : public Error {
 public:
  ConvergenceFailure(std::size_t index, const std::string& what)
      : Error("eigenpair " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class ToleranceNotMet : public Error {
 public:
  ToleranceNotMet(double estimate, double error_bound)
      : Error("quadrature tolerance not met: estimate=" + std::to_string(estimate) +
              " error_bound=" + std::to_string(error_bound)),
        estimate_(estimate),
        error_bound_(error_bound) {}
  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

}  // namespace pdem
