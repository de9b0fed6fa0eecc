#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hml/core/matrix.hpp"
#include "hml/core/scalar.hpp"

namespace hml {

/// Uniform grid of n cells on [0,1] with the normalized indicator basis
/// u_k = h^(-1/2) 1_{cell k}.
struct GridSpec {
  std::size_t n;

  explicit GridSpec(std::size_t cells);
  Rational width() const { return Rational(1, static_cast<long>(n)); }
  /// Exact check that every basis function has unit norm: h * (1/h) = 1.
  bool basis_is_orthonormal() const;
};

enum class DiscretizationScheme { kExactGramian, kProductForm };

std::string_view to_string(DiscretizationScheme scheme);
/// Accepts "exact-gramian", "product" and "product-form".
DiscretizationScheme parse_scheme(std::string_view name);

/// 1/(i+j-1), i,j = 1..n.
DenseMatrix<Rational> hilbert_segment(std::size_t n);

/// Lower Cholesky factor at working precision. Throws PivotFailure when a
/// pivot is not positive.
template <Scalar T>
DenseMatrix<T> cholesky_factor(const DenseMatrix<T>& m, const PrecisionContext& ctx);

/// Cholesky factor of an exact matrix: exact LDL^T, then each entry
/// l_ij * sqrt(d_j) rounded once. Throws PivotFailure if m is not positive
/// definite.
template <Scalar T>
DenseMatrix<T> exact_cholesky_factor(const DenseMatrix<Rational>& m, const PrecisionContext& ctx);

/// ||L L^T - m||_F / ||m||_F.
template <Scalar T>
T cholesky_relative_residual(const DenseMatrix<T>& l, const DenseMatrix<T>& m);

/// Galerkin matrix of the integration operator: h below the diagonal, h/2 on it.
DenseMatrix<Rational> j_matrix(const GridSpec& grid);

/// Moment functionals against the indicator basis, exact:
/// ((kh)^j - ((k-1)h)^j) / (j sqrt(h)).
DenseMatrix<Surd> bh_matrix(const GridSpec& grid, std::size_t rows);
template <Scalar T>
DenseMatrix<T> bh_matrix(const GridSpec& grid, std::size_t rows, const PrecisionContext& ctx);

/// <A u_k, e_j> in closed form, exact.
DenseMatrix<Surd> a_matrix_exact(const GridSpec& grid);
/// n x n discretization of the composed operator under either scheme.
/// Exact-gramian entries are streamed from integer data and rounded once;
/// product-form is bh_matrix * j_matrix.
template <Scalar T>
DenseMatrix<T> a_matrix(const GridSpec& grid, DiscretizationScheme scheme, const PrecisionContext& ctx);

/// Row i = Legendre basis index, column j = moment: 1/(j+1) in row 1 and
/// <L_i, t^j>/j below.
DenseMatrix<Surd> legendre_gramian(std::size_t n);

/// <L_m, J u_k>, exact.
DenseMatrix<Surd> qj_gramian(const GridSpec& grid, std::size_t rows);

/// max |L diag((-1)^(m-1)) QJ - A| over entries, all three built at the
/// working precision. The Cholesky factor has a positive diagonal while the
/// Legendre expansion of t^(j-1) has leading sign (-1)^(j-1), hence the
/// sign diagonal.
template <Scalar T>
T factorization_identity_gap(std::size_t n, const PrecisionContext& ctx);

/// n x n Hilbert segment with its leading base x base block zeroed.
DenseMatrix<Rational> padded_difference(std::size_t n, std::size_t base);

/// Frobenius norm of padded_difference(n, base), summed by anti-diagonal
/// without forming the matrix.
template <Scalar T>
T padded_difference_frobenius(std::size_t n, std::size_t base, const PrecisionContext& ctx);

/// Matrix-free padded_difference(n, base) at working precision.
template <Scalar T>
class PaddedHilbertDifference {
 public:
  PaddedHilbertDifference(std::size_t n, std::size_t base, const PrecisionContext& ctx);

  std::size_t rows() const { return n_; }
  std::size_t cols() const { return n_; }
  void apply(const std::vector<T>& x, std::vector<T>& y) const;
  void apply_transpose(const std::vector<T>& x, std::vector<T>& y) const { apply(x, y); }

 private:
  std::size_t n_;
  std::size_t base_;
  std::vector<T> hankel_;  // 1/(s+1), s = i+j (0-based)
};

/// Truncated factor G (n x r) with G G^T ~ H_n, from symmetric pivoted
/// Cholesky on the Cauchy structure of the Hilbert matrix. Entries are
/// formed directly from products of (i-p)/(i+p-1), so they carry full
/// relative accuracy. Stops once the trace of the remaining Schur
/// complement drops below trace_tolerance, which is also an upper bound on
/// the spectral norm of the discarded part.
template <Scalar T>
struct HilbertLowRankFactor {
  DenseMatrix<T> factor;
  std::vector<std::size_t> pivots;  // 1-based, in elimination order
  T remainder_trace;
};

template <Scalar T>
HilbertLowRankFactor<T> hilbert_low_rank_factor(std::size_t n, const T& trace_tolerance, const PrecisionContext& ctx);

}  // namespace hml
