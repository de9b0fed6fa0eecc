#pragma once

#include <cstddef>
#include <vector>

#include "hml/core/scalar.hpp"

namespace hml {

/// Least-squares line through (x_i, ln value_i) over a 1-based index window.
struct LogLinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  std::size_t first = 1;
  std::size_t last = 1;
};

/// Fits ln values[i] = slope * i + intercept for i in [first, last].
/// Throws std::domain_error on a nonpositive value in the window.
template <Scalar T>
LogLinearFit fit_log_linear(const std::vector<T>& values, std::size_t first, std::size_t last);

/// Fits ln values[i] = slope * ln i + intercept (polynomial decay i^slope).
template <Scalar T>
LogLinearFit fit_power_law(const std::vector<T>& values, std::size_t first, std::size_t last);

/// Ordinary least squares on (x, y); used by both fits.
LogLinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hml
