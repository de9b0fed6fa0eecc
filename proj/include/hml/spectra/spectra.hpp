#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <vector>

#include "hml/core/matrix.hpp"
#include "hml/core/scalar.hpp"

namespace hml {

/// Descending spectrum with trust accounting.
///
/// trusted[i] holds when values[i] >= trust_floor = values[0] * 10^(-digits+5).
/// Values computed from a truncated factorization are also untrusted when
/// they fall below the truncation bound.
template <Scalar T>
struct SpectralResult {
  std::vector<T> values;
  std::vector<bool> trusted;
  T trust_floor;
  int digits = 0;
  int iterations = 0;
  /// Final convergence measure: off(A)/||A||_F for two-sided Jacobi, the
  /// largest column cosine for one-sided Jacobi.
  double residual = 0.0;
  std::optional<T> truncation_bound;

  std::size_t trusted_count() const;
  /// Number of leading trusted values (the window usable for fits).
  std::size_t trusted_prefix() const;
};

/// Sorts descending (ties keep input order) and fills in the trust fields.
template <Scalar T>
SpectralResult<T> make_spectral_result(std::vector<T> values, const PrecisionContext& ctx);

/// Default convergence tolerance 10^(-digits+10).
template <Scalar T>
T default_tolerance(const PrecisionContext& ctx) {
  return decimal_power<T>(ctx.tolerance_exponent(), ctx);
}

struct JacobiOptions {
  int max_sweeps = 100;
};

/// Eigenvalues of a symmetric matrix by row-cyclic two-sided Jacobi.
///
/// A pair is rotated while |a_pq| > u sqrt(|a_pp a_qq|) (u = unit roundoff),
/// the threshold that keeps relative accuracy on positive definite input.
/// After the sweeps stop, off(A) <= tol ||A||_F is required.
template <Scalar T>
SpectralResult<T> symmetric_eigenvalues(const DenseMatrix<T>& m, const PrecisionContext& ctx,
                                        std::optional<T> tol = std::nullopt, JacobiOptions options = {});

/// Singular values by one-sided (Hestenes) Jacobi on the columns. Tall input
/// is first reduced by Householder QR, wide input is transposed.
template <Scalar T>
SpectralResult<T> singular_values(const DenseMatrix<T>& m, const PrecisionContext& ctx,
                                  std::optional<T> tol = std::nullopt, JacobiOptions options = {});

/// Eigenvalues of the Hilbert segment H_n from the singular values of its
/// rank-revealing Cauchy factor, squared. Relative accuracy holds down to
/// the truncation bound, which is set at 10^(-digits) of the trace.
template <Scalar T>
SpectralResult<T> hilbert_eigenvalues(std::size_t n, const PrecisionContext& ctx);

/// Operator on vectors with a transpose, e.g. a matrix-free matrix.
template <class Op, class T>
concept LinearMap = requires(const Op& op, const std::vector<T>& x, std::vector<T>& y) {
  { op.rows() } -> std::convertible_to<std::size_t>;
  { op.cols() } -> std::convertible_to<std::size_t>;
  op.apply(x, y);
  op.apply_transpose(x, y);
};

template <Scalar T>
class DenseMap {
 public:
  explicit DenseMap(const DenseMatrix<T>& m) : m_(m) {}
  std::size_t rows() const { return m_.rows(); }
  std::size_t cols() const { return m_.cols(); }
  void apply(const std::vector<T>& x, std::vector<T>& y) const;
  void apply_transpose(const std::vector<T>& x, std::vector<T>& y) const;
  bool is_zero() const;

 private:
  const DenseMatrix<T>& m_;
};

template <Scalar T>
struct PowerIterationResult {
  T sigma;
  std::vector<T> vector;  // unit right singular vector estimate
  int iterations = 0;
  bool converged = false;
  double last_relative_change = 0.0;
};

/// Dominant singular pair by power iteration on M^T M from the all-ones
/// start. Stops when successive Rayleigh quotients differ by at most tol
/// relative; returns the best estimate flagged unconverged after max_iter.
template <Scalar T, class Op>
  requires LinearMap<Op, T>
PowerIterationResult<T> top_singular_pair(const Op& op, const PrecisionContext& ctx, const T& tol,
                                          int max_iter = 100000);

template <Scalar T>
PowerIterationResult<T> top_singular_pair(const DenseMatrix<T>& m, const PrecisionContext& ctx, const T& tol,
                                          int max_iter = 100000);

/// Domain side: right singular vectors, the functions the matrix acts on
/// (cosines for the integration operator). Range side: left singular vectors.
enum class SingularSide { kDomain, kRange };

template <Scalar T>
struct SingularVectorResult {
  T sigma;
  std::vector<T> vector;  // unit norm, first significant entry positive
  /// Set when sigma_i is within the trust floor of a neighbour. basis then
  /// spans the whole cluster [cluster_first, cluster_last] (1-based).
  bool degenerate = false;
  std::size_t cluster_first = 0;
  std::size_t cluster_last = 0;
  std::vector<std::vector<T>> basis;
  SpectralResult<T> spectrum;
};

/// i-th singular vector (1-based). Throws NumericalError when sigma_i is
/// below the trust floor.
template <Scalar T>
SingularVectorResult<T> singular_vector(const DenseMatrix<T>& m, std::size_t i, const PrecisionContext& ctx,
                                        SingularSide side = SingularSide::kDomain);

namespace detail {

template <Scalar T>
T squared_norm(const std::vector<T>& x) {
  T s = x.front() * 0.0;
  kernels::dot(std::span<const T>(x), std::span<const T>(x), s);
  return s;
}

}  // namespace detail

template <Scalar T, class Op>
  requires LinearMap<Op, T>
PowerIterationResult<T> top_singular_pair(const Op& op, const PrecisionContext& ctx, const T& tol, int max_iter) {
  using std::abs;
  using std::sqrt;
  const std::size_t n = op.cols();
  const T zero = make_scalar<T>(0.0, ctx);
  std::vector<T> x(n, make_scalar<T>(1.0, ctx) / sqrt(make_scalar<T>(static_cast<double>(n), ctx)));
  std::vector<T> y;
  std::vector<T> z;
  PowerIterationResult<T> result{zero, x, 0, false, 0.0};
  T previous = zero;
  bool tried_fallback = false;
  for (int it = 1; it <= max_iter; ++it) {
    op.apply(x, y);
    const T rho = detail::squared_norm(y);  // x^T M^T M x with |x| = 1
    op.apply_transpose(y, z);
    const T z_norm = sqrt(detail::squared_norm(z));
    result.iterations = it;
    if (z_norm == 0.0) {
      // The start vector lies in the null space. Retry once from e_1; if that
      // is annihilated too, the map is treated as zero.
      if (!tried_fallback && it == 1) {
        tried_fallback = true;
        std::fill(x.begin(), x.end(), zero);
        x[0] = make_scalar<T>(1.0, ctx);
        continue;
      }
      result.sigma = zero;
      result.vector = x;
      result.converged = true;
      return result;
    }
    result.sigma = sqrt(rho);
    result.vector = x;
    if (it > 1) {
      const T change = abs(rho - previous) / rho;
      result.last_relative_change = to_double(change);
      if (change <= tol) {
        result.converged = true;
        return result;
      }
    }
    previous = rho;
    for (std::size_t k = 0; k < n; ++k) x[k] = z[k] / z_norm;
  }
  return result;
}

}  // namespace hml
