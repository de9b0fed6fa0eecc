#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hml/core/scalar.hpp"

namespace hml {

/// Piecewise-constant function on n uniform cells of [0,1].
template <Scalar T>
class GridFunction {
 public:
  GridFunction(std::size_t n, std::vector<T> values) : values_(std::move(values)) {
    if (n == 0) throw std::invalid_argument("grid function needs at least one cell");
    if (values_.size() != n) throw std::invalid_argument("grid function value count does not match cell count");
  }

  static GridFunction constant(std::size_t n, double value, const PrecisionContext& ctx) {
    return GridFunction(n, std::vector<T>(n, make_scalar<T>(value, ctx)));
  }

  std::size_t size() const { return values_.size(); }
  const std::vector<T>& values() const { return values_; }
  const T& operator[](std::size_t k) const { return values_[k]; }

  /// Cell midpoint (k + 1/2)/n, 0-based k.
  static T midpoint(std::size_t k, std::size_t n, const PrecisionContext& ctx) {
    return to_scalar<T>(Rational(static_cast<long>(2 * k + 1), static_cast<long>(2 * n)), ctx);
  }

  /// h * sum of squares: the L2(0,1) norm squared.
  T squared_norm() const {
    T sum = values_.front() * 0.0;
    for (const T& v : values_) sum += v * v;
    return sum / static_cast<double>(values_.size());
  }

 private:
  std::vector<T> values_;
};

}  // namespace hml
