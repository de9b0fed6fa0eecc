#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace hml {

namespace detail {
inline std::string short_double(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.3e", x);
  return buffer;
}
}  // namespace detail

/// Base class for failures caused by finite working precision or iteration
/// limits, as opposed to invalid input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Cholesky pivot came out non-positive: the working precision is exhausted.
class PivotFailure : public NumericalError {
 public:
  PivotFailure(std::size_t pivot_index, double pivot_value, int digits)
      : NumericalError("non-positive pivot " + detail::short_double(pivot_value) + " at index " +
                       std::to_string(pivot_index) + ": precision exhausted at " + std::to_string(digits) +
                       " digits"),
        pivot_index_(pivot_index),
        pivot_value_(pivot_value) {}

  /// One-based index of the failing pivot.
  std::size_t pivot_index() const { return pivot_index_; }
  double pivot_value() const { return pivot_value_; }

 private:
  std::size_t pivot_index_;
  double pivot_value_;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, int iterations, double residual)
      : NumericalError(what + " did not converge after " + std::to_string(iterations) +
                       " iterations (residual " + detail::short_double(residual) + ")"),
        iterations_(iterations),
        residual_(residual) {}

  int iterations() const { return iterations_; }
  double residual() const { return residual_; }

 private:
  int iterations_;
  double residual_;
};

}  // namespace hml
