#pragma once

#include <cstddef>
#include <vector>

#include "hml/core/scalar.hpp"
#include "hml/operators/grid_function.hpp"

namespace hml {

/// int_0^1 t^(j-1) z(t) dt for piecewise-constant z, with the per-cell
/// monomial increments computed exactly.
template <Scalar T>
T hausdorff_moment(const GridFunction<T>& z, int j, const PrecisionContext& ctx);

/// Continuous piecewise-linear s -> int_0^s x(t) dt.
template <Scalar T>
class Antiderivative {
 public:
  explicit Antiderivative(const GridFunction<T>& x);

  /// Value at s in [0,1].
  T operator()(const T& s) const;
  const std::vector<T>& node_values() const { return nodes_; }

 private:
  std::vector<T> nodes_;  // value at k/n, k = 0..n
  std::vector<T> slopes_;
};

template <Scalar T>
Antiderivative<T> cumulative_integral(const GridFunction<T>& x) {
  return Antiderivative<T>(x);
}

template <Scalar T>
struct SingularTriple {
  T sigma;
  GridFunction<T> u;  // domain side: sqrt(2) cos((i - 1/2) pi t)
  GridFunction<T> v;  // range side:  sqrt(2) sin((i - 1/2) pi t)
};

/// Analytic i-th singular value of the integration operator and its
/// singular functions sampled at the midpoints of n cells.
template <Scalar T>
SingularTriple<T> j_singular_triple(int i, std::size_t n, const PrecisionContext& ctx);

/// sum_{j>=1} x^j / j^2 on [0,1].
template <Scalar T>
T dilog(const T& x, const PrecisionContext& ctx);

/// k(s,t) = sum_j (1 - s^j)(1 - t^j)/j^2 via the dilogarithm closed form.
template <Scalar T>
T kernel_k(const T& s, const T& t, const PrecisionContext& ctx);

/// sum_{j=1}^{terms} -s^(j-1) (1 - t^j)/j.
template <Scalar T>
T kernel_ds_partial_sum(const T& s, const T& t, long terms, const PrecisionContext& ctx);

/// exp(-pi^2 / (2 ln(8n - 4))).
template <Scalar T>
T phi(long n, const PrecisionContext& ctx);

}  // namespace hml
