#include "hml/experiments/fit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hml {

namespace {

template <Scalar T>
std::vector<double> logs_in_window(const std::vector<T>& values, std::size_t first, std::size_t last) {
  using std::log;
  if (first < 1 || last < first || last > values.size()) {
    throw std::invalid_argument("fit window [" + std::to_string(first) + "," + std::to_string(last) +
                                "] outside 1.." + std::to_string(values.size()));
  }
  std::vector<double> y;
  for (std::size_t i = first; i <= last; ++i) {
    const T& v = values[i - 1];
    if (!(v > 0.0)) throw std::domain_error("nonpositive value at index " + std::to_string(i) + " in fit window");
    // The logarithm is taken at working precision so values below the
    // double range still fit.
    y.push_back(to_double(log(v)));
  }
  return y;
}

}  // namespace

LogLinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.empty() || x.size() != y.size()) throw std::invalid_argument("fit needs matching nonempty samples");
  const double count = static_cast<double>(x.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mean_x += x[k];
    mean_y += y[k];
  }
  mean_x /= count;
  mean_y /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxx += (x[k] - mean_x) * (x[k] - mean_x);
    sxy += (x[k] - mean_x) * (y[k] - mean_y);
  }
  LogLinearFit fit;
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = mean_y - fit.slope * mean_x;
  double sum_squares = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = y[k] - (fit.slope * x[k] + fit.intercept);
    sum_squares += r * r;
  }
  fit.residual_rms = std::sqrt(sum_squares / count);
  return fit;
}

template <Scalar T>
LogLinearFit fit_log_linear(const std::vector<T>& values, std::size_t first, std::size_t last) {
  const std::vector<double> y = logs_in_window(values, first, last);
  std::vector<double> x;
  for (std::size_t i = first; i <= last; ++i) x.push_back(static_cast<double>(i));
  LogLinearFit fit = fit_line(x, y);
  fit.first = first;
  fit.last = last;
  return fit;
}

template <Scalar T>
LogLinearFit fit_power_law(const std::vector<T>& values, std::size_t first, std::size_t last) {
  const std::vector<double> y = logs_in_window(values, first, last);
  std::vector<double> x;
  for (std::size_t i = first; i <= last; ++i) x.push_back(std::log(static_cast<double>(i)));
  LogLinearFit fit = fit_line(x, y);
  fit.first = first;
  fit.last = last;
  return fit;
}

template LogLinearFit fit_log_linear<double>(const std::vector<double>&, std::size_t, std::size_t);
template LogLinearFit fit_log_linear<BigFloat>(const std::vector<BigFloat>&, std::size_t, std::size_t);
template LogLinearFit fit_power_law<double>(const std::vector<double>&, std::size_t, std::size_t);
template LogLinearFit fit_power_law<BigFloat>(const std::vector<BigFloat>&, std::size_t, std::size_t);

}  // namespace hml
