#include "hml/spectra/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hml/core/errors.hpp"
#include "hml/discretize/discretize.hpp"

namespace hml {

namespace {

template <Scalar T>
std::vector<std::vector<T>> columns_of(const DenseMatrix<T>& m) {
  std::vector<std::vector<T>> cols(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    cols[j].reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) cols[j].push_back(m(i, j));
  }
  return cols;
}

template <Scalar T>
std::vector<std::vector<T>> rows_of(const DenseMatrix<T>& m) {
  std::vector<std::vector<T>> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) rows[i].assign(m.row(i).begin(), m.row(i).end());
  return rows;
}

template <Scalar T>
T dot(const std::vector<T>& a, const std::vector<T>& b, T& scratch) {
  kernels::dot(std::span<const T>(a), std::span<const T>(b), scratch);
  return scratch;
}

struct SweepStats {
  int sweeps = 0;
  double residual = 0.0;
};

// Hestenes one-sided Jacobi: rotates column pairs until every pair is
// numerically orthogonal. Columns end up as U * Sigma of the input.
template <Scalar T>
SweepStats orthogonalize_columns(std::vector<std::vector<T>>& cols, const PrecisionContext& ctx, const T& tol,
                                 const JacobiOptions& options) {
  using std::abs;
  using std::sqrt;
  const std::size_t count = cols.size();
  SweepStats stats;
  if (count < 2) return stats;
  const std::size_t length = cols.front().size();
  const T threshold = unit_roundoff<T>(ctx) * sqrt(make_scalar<T>(static_cast<double>(length), ctx));
  std::vector<T> norms(count, make_scalar<T>(0.0, ctx));
  T gamma = make_scalar<T>(0.0, ctx);
  const T one = make_scalar<T>(1.0, ctx);
  for (int sweep = 1; sweep <= options.max_sweeps; ++sweep) {
    stats.sweeps = sweep;
    for (std::size_t p = 0; p < count; ++p) dot(cols[p], cols[p], norms[p]);
    bool rotated = false;
    T worst = make_scalar<T>(0.0, ctx);
    for (std::size_t p = 0; p + 1 < count; ++p) {
      for (std::size_t q = p + 1; q < count; ++q) {
        const T& alpha = norms[p];
        const T& beta = norms[q];
        if (alpha == 0.0 || beta == 0.0) continue;
        dot(cols[p], cols[q], gamma);
        if (gamma == 0.0) continue;
        const T cosine = abs(gamma) / sqrt(alpha * beta);
        if (cosine > worst) worst = cosine;
        if (!(cosine > threshold)) continue;
        rotated = true;
        const T zeta = (beta - alpha) / (2.0 * gamma);
        T t = one / (abs(zeta) + sqrt(one + zeta * zeta));
        if (zeta < 0.0) t = -t;
        const T c = one / sqrt(one + t * t);
        const T s = c * t;
        kernels::rotate(std::span<T>(cols[p]), std::span<T>(cols[q]), c, s);
        norms[p] -= t * gamma;
        norms[q] += t * gamma;
      }
    }
    stats.residual = to_double(worst);
    if (!rotated) {
      if (worst > tol) throw ConvergenceError("one-sided Jacobi", sweep, stats.residual);
      return stats;
    }
  }
  throw ConvergenceError("one-sided Jacobi", options.max_sweeps, stats.residual);
}

// Householder QR of the columns (length m > count). Returns the columns of
// the count x count triangular factor R.
template <Scalar T>
std::vector<std::vector<T>> triangular_factor(std::vector<std::vector<T>> cols, const PrecisionContext& ctx) {
  using std::sqrt;
  const std::size_t count = cols.size();
  const std::size_t m = cols.front().size();
  T scratch = make_scalar<T>(0.0, ctx);
  std::vector<T> v;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<T>& a = cols[k];
    T norm2 = make_scalar<T>(0.0, ctx);
    kernels::dot(std::span<const T>(a).subspan(k), std::span<const T>(a).subspan(k), norm2);
    if (norm2 == 0.0) continue;
    const T norm = sqrt(norm2);
    const T diagonal = a[k] < 0.0 ? norm : T(-norm);
    v.assign(a.begin() + static_cast<std::ptrdiff_t>(k), a.end());
    v[0] -= diagonal;
    // |v|^2 = 2 (norm^2 - a_k diagonal) without cancellation since signs differ.
    const T v_norm2 = 2.0 * (norm2 - a[k] * diagonal);
    for (std::size_t j = k + 1; j < count; ++j) {
      std::span<T> target = std::span<T>(cols[j]).subspan(k);
      kernels::dot(std::span<const T>(v), std::span<const T>(target), scratch);
      const T factor = 2.0 * scratch / v_norm2;
      kernels::axpy_minus(target, factor, std::span<const T>(v));
    }
    a[k] = diagonal;
    for (std::size_t i = k + 1; i < m; ++i) a[i] = a[i] * 0.0;
  }
  std::vector<std::vector<T>> r(count);
  for (std::size_t j = 0; j < count; ++j) r[j].assign(cols[j].begin(), cols[j].begin() + static_cast<std::ptrdiff_t>(count));
  return r;
}

// Householder QR with column pivoting on the columns (each of length m).
// Stops once the Frobenius norm of the unreduced block is at most
// cutoff, which only discards a perturbation of that norm. Returns the rows
// of the leading r x count block of R (columns in pivot order) and the
// discarded norm squared.
template <Scalar T>
struct PivotedFactor {
  std::vector<std::vector<T>> rows;
  T discarded_squared;
};

template <Scalar T>
PivotedFactor<T> pivoted_triangular_factor(std::vector<std::vector<T>> cols, const T& cutoff,
                                           const PrecisionContext& ctx) {
  using std::sqrt;
  const std::size_t count = cols.size();
  const std::size_t m = cols.front().size();
  const std::size_t steps = std::min(count, m);
  const T zero = make_scalar<T>(0.0, ctx);
  const T cutoff_squared = cutoff * cutoff;
  std::vector<T> norms(count, zero);
  T scratch = zero;
  T remaining = zero;
  std::vector<T> v;
  std::size_t k = 0;
  for (; k < steps; ++k) {
    // Exact partial norms each step: no downdating drift.
    remaining = zero;
    std::size_t pivot = k;
    for (std::size_t j = k; j < count; ++j) {
      kernels::dot(std::span<const T>(cols[j]).subspan(k), std::span<const T>(cols[j]).subspan(k), norms[j]);
      remaining += norms[j];
      if (norms[j] > norms[pivot]) pivot = j;
    }
    if (!(remaining > cutoff_squared)) break;
    std::swap(cols[k], cols[pivot]);
    std::swap(norms[k], norms[pivot]);
    std::vector<T>& a = cols[k];
    const T norm = sqrt(norms[k]);
    const T diagonal = a[k] < 0.0 ? norm : T(-norm);
    v.assign(a.begin() + static_cast<std::ptrdiff_t>(k), a.end());
    v[0] -= diagonal;
    const T v_norm2 = 2.0 * (norms[k] - a[k] * diagonal);
    for (std::size_t j = k + 1; j < count; ++j) {
      std::span<T> target = std::span<T>(cols[j]).subspan(k);
      kernels::dot(std::span<const T>(v), std::span<const T>(target), scratch);
      const T factor = 2.0 * scratch / v_norm2;
      kernels::axpy_minus(target, factor, std::span<const T>(v));
    }
    a[k] = diagonal;
    for (std::size_t i = k + 1; i < m; ++i) a[i] = zero;
  }
  if (k == steps) remaining = zero;
  PivotedFactor<T> out{std::vector<std::vector<T>>(k, std::vector<T>(count, zero)), remaining};
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < count; ++j) out.rows[i][j] = cols[j][i];
  }
  return out;
}

template <Scalar T>
std::vector<std::size_t> descending_order(const std::vector<T>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  return order;
}

template <Scalar T>
void normalize_sign(std::vector<T>& x, const PrecisionContext& ctx) {
  using std::abs;
  using std::sqrt;
  T largest = make_scalar<T>(0.0, ctx);
  for (const T& e : x) {
    if (abs(e) > largest) largest = abs(e);
  }
  const T significant = largest * sqrt(unit_roundoff<T>(ctx));
  for (const T& e : x) {
    if (abs(e) > significant) {
      if (e < 0.0) {
        for (T& f : x) f = -f;
      }
      return;
    }
  }
}

}  // namespace

template <Scalar T>
std::size_t SpectralResult<T>::trusted_count() const {
  return static_cast<std::size_t>(std::count(trusted.begin(), trusted.end(), true));
}

template <Scalar T>
std::size_t SpectralResult<T>::trusted_prefix() const {
  std::size_t k = 0;
  while (k < trusted.size() && trusted[k]) ++k;
  return k;
}

template <Scalar T>
SpectralResult<T> make_spectral_result(std::vector<T> values, const PrecisionContext& ctx) {
  if (values.empty()) throw std::invalid_argument("empty spectrum");
  const std::vector<std::size_t> order = descending_order(values);
  SpectralResult<T> result{{}, {}, make_scalar<T>(0.0, ctx), ctx.digits(), 0, 0.0, std::nullopt};
  result.values.reserve(values.size());
  for (std::size_t k : order) result.values.push_back(values[k]);
  result.trust_floor = result.values.front() * decimal_power<T>(ctx.trust_exponent(), ctx);
  for (const T& v : result.values) result.trusted.push_back(v >= result.trust_floor && v > 0.0);
  return result;
}

template <Scalar T>
SpectralResult<T> symmetric_eigenvalues(const DenseMatrix<T>& m, const PrecisionContext& ctx, std::optional<T> tol,
                                        JacobiOptions options) {
  using std::abs;
  using std::sqrt;
  if (!m.is_square()) throw std::invalid_argument("eigenvalues need a square matrix");
  const T tolerance = tol ? *tol : default_tolerance<T>(ctx);
  const T norm = frobenius(m);
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (abs(m(i, j) - m(j, i)) > tolerance * norm) {
        throw std::invalid_argument("matrix " + m.label() + " is not symmetric at entry (" + std::to_string(i + 1) +
                                    "," + std::to_string(j + 1) + ")");
      }
    }
  }
  DenseMatrix<T> a = m;
  const T u = unit_roundoff<T>(ctx);
  const T one = make_scalar<T>(1.0, ctx);
  auto off_norm = [&]() {
    T s = make_scalar<T>(0.0, ctx);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) s += a(i, j) * a(i, j);
      }
    }
    return sqrt(s);
  };
  int sweeps = 0;
  bool rotated = true;
  while (rotated) {
    if (sweeps == options.max_sweeps) {
      throw ConvergenceError("Jacobi eigenvalue iteration", sweeps, to_double(off_norm() / norm));
    }
    ++sweeps;
    rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const T apq = a(p, q);
        if (apq == 0.0) continue;
        if (!(abs(apq) > u * sqrt(abs(a(p, p) * a(q, q))))) continue;
        rotated = true;
        const T theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        T t = one / (abs(theta) + sqrt(one + theta * theta));
        if (theta < 0.0) t = -t;
        const T c = one / sqrt(one + t * t);
        const T s = c * t;
        const T app = a(p, p) - t * apq;
        const T aqq = a(q, q) + t * apq;
        kernels::rotate(a.row(p), a.row(q), c, s);
        a(p, p) = app;
        a(q, q) = aqq;
        a(p, q) = a(p, q) * 0.0;
        a(q, p) = a(p, q);
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          a(k, p) = a(p, k);
          a(k, q) = a(q, k);
        }
      }
    }
  }
  const T off = off_norm();
  if (off > tolerance * norm) {
    throw ConvergenceError("Jacobi eigenvalue iteration", sweeps, to_double(off / norm));
  }
  std::vector<T> diagonal;
  diagonal.reserve(n);
  for (std::size_t i = 0; i < n; ++i) diagonal.push_back(a(i, i));
  SpectralResult<T> result = make_spectral_result(std::move(diagonal), ctx);
  result.iterations = sweeps;
  result.residual = norm == 0.0 ? 0.0 : to_double(off / norm);
  return result;
}

template <Scalar T>
SpectralResult<T> singular_values(const DenseMatrix<T>& m, const PrecisionContext& ctx, std::optional<T> tol,
                                  JacobiOptions options) {
  using std::sqrt;
  const T tolerance = tol ? *tol : default_tolerance<T>(ctx);
  std::vector<std::vector<T>> cols = m.rows() >= m.cols() ? columns_of(m) : rows_of(m);
  const std::size_t count = cols.size();
  // Preconditioning: A P = Q R with column pivoting, then Jacobi on the
  // columns of R^T, which are already close to orthogonal. The reduction
  // stops once the unreduced block is at roundoff level relative to
  // ||A||_F; that block is no larger than the rounding error the
  // factorization commits anyway, so every value above the trust floor is
  // unaffected. The dropped values are reported as zero and untrusted.
  T total = make_scalar<T>(0.0, ctx);
  T scratch = make_scalar<T>(0.0, ctx);
  for (const auto& c : cols) total += dot(c, c, scratch);
  const T cutoff = unit_roundoff<T>(ctx) * sqrt(total);
  PivotedFactor<T> factor = pivoted_triangular_factor(std::move(cols), cutoff, ctx);
  cols = std::move(factor.rows);
  std::vector<T> sigma;
  SweepStats stats;
  if (!cols.empty()) {
    if (cols.front().size() > cols.size()) cols = triangular_factor(std::move(cols), ctx);
    stats = orthogonalize_columns(cols, ctx, tolerance, options);
    sigma.reserve(count);
    for (const auto& c : cols) sigma.push_back(sqrt(dot(c, c, scratch)));
  }
  while (sigma.size() < count) sigma.push_back(make_scalar<T>(0.0, ctx));
  SpectralResult<T> result = make_spectral_result(std::move(sigma), ctx);
  result.iterations = stats.sweeps;
  result.residual = stats.residual;
  if (factor.discarded_squared > 0.0) result.truncation_bound = sqrt(factor.discarded_squared);
  return result;
}

template <Scalar T>
SpectralResult<T> hilbert_eigenvalues(std::size_t n, const PrecisionContext& ctx) {
  T trace = make_scalar<T>(0.0, ctx);
  for (std::size_t i = 1; i <= n; ++i) trace += make_scalar<T>(1.0, ctx) / static_cast<double>(2 * i - 1);
  const T target = trace * decimal_power<T>(-ctx.digits(), ctx);
  HilbertLowRankFactor<T> factor = hilbert_low_rank_factor<T>(n, target, ctx);
  SpectralResult<T> sigma = singular_values(factor.factor, ctx);
  std::vector<T> lambda;
  lambda.reserve(sigma.values.size());
  for (const T& s : sigma.values) lambda.push_back(s * s);
  SpectralResult<T> result = make_spectral_result(std::move(lambda), ctx);
  result.iterations = sigma.iterations;
  result.residual = sigma.residual;
  if (factor.remainder_trace > 0.0) {
    // Weyl: each eigenvalue moves by at most the discarded part's norm.
    const T noise = factor.remainder_trace * decimal_power<T>(5, ctx);
    for (std::size_t k = 0; k < result.values.size(); ++k) {
      if (!(result.values[k] > noise)) result.trusted[k] = false;
    }
    result.truncation_bound = factor.remainder_trace;
  }
  return result;
}

template <Scalar T>
void DenseMap<T>::apply(const std::vector<T>& x, std::vector<T>& y) const {
  if (x.size() != m_.cols()) throw std::invalid_argument("operand length does not match matrix columns");
  y.assign(m_.rows(), x.front() * 0.0);
  for (std::size_t i = 0; i < m_.rows(); ++i) kernels::dot(m_.row(i), std::span<const T>(x), y[i]);
}

template <Scalar T>
void DenseMap<T>::apply_transpose(const std::vector<T>& x, std::vector<T>& y) const {
  if (x.size() != m_.rows()) throw std::invalid_argument("operand length does not match matrix rows");
  y.assign(m_.cols(), x.front() * 0.0);
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    const auto row = m_.row(i);
    for (std::size_t j = 0; j < m_.cols(); ++j) y[j] += row[j] * x[i];
  }
}

template <Scalar T>
bool DenseMap<T>::is_zero() const {
  return std::all_of(m_.entries().begin(), m_.entries().end(), [](const T& e) { return e == 0.0; });
}

template <Scalar T>
PowerIterationResult<T> top_singular_pair(const DenseMatrix<T>& m, const PrecisionContext& ctx, const T& tol,
                                          int max_iter) {
  const DenseMap<T> map(m);
  if (map.is_zero()) {
    return PowerIterationResult<T>{make_scalar<T>(0.0, ctx), std::vector<T>(m.cols(), make_scalar<T>(0.0, ctx)), 0,
                                   true, 0.0};
  }
  return top_singular_pair<T, DenseMap<T>>(map, ctx, tol, max_iter);
}

template <Scalar T>
SingularVectorResult<T> singular_vector(const DenseMatrix<T>& m, std::size_t i, const PrecisionContext& ctx,
                                        SingularSide side) {
  using std::abs;
  using std::sqrt;
  const std::size_t rank_bound = std::min(m.rows(), m.cols());
  if (i < 1 || i > rank_bound) {
    throw std::invalid_argument("singular index " + std::to_string(i) + " outside 1.." + std::to_string(rank_bound));
  }
  // Orthogonalizing the columns of X leaves U Sigma of X. The domain-side
  // vectors of m are the left vectors of m^T, whose columns are m's rows.
  std::vector<std::vector<T>> cols = side == SingularSide::kDomain ? rows_of(m) : columns_of(m);
  const SweepStats stats = orthogonalize_columns(cols, ctx, default_tolerance<T>(ctx), JacobiOptions{});
  std::vector<T> sigma;
  sigma.reserve(cols.size());
  T scratch = make_scalar<T>(0.0, ctx);
  for (const auto& c : cols) sigma.push_back(sqrt(dot(c, c, scratch)));
  const std::vector<std::size_t> order = descending_order(sigma);
  SpectralResult<T> spectrum = make_spectral_result(sigma, ctx);
  spectrum.iterations = stats.sweeps;
  spectrum.residual = stats.residual;
  if (!spectrum.trusted[i - 1]) {
    throw NumericalError("singular value " + std::to_string(i) + " is below the trust floor at " +
                         std::to_string(ctx.digits()) + " digits");
  }
  auto unit_column = [&](std::size_t rank) {
    std::vector<T> v = cols[order[rank - 1]];
    const T s = spectrum.values[rank - 1];
    for (T& e : v) e /= s;
    normalize_sign(v, ctx);
    return v;
  };
  std::size_t first = i;
  std::size_t last = i;
  while (first > 1 && abs(spectrum.values[first - 2] - spectrum.values[first - 1]) <= spectrum.trust_floor) --first;
  while (last < spectrum.values.size() && abs(spectrum.values[last] - spectrum.values[last - 1]) <= spectrum.trust_floor) {
    ++last;
  }
  SingularVectorResult<T> result{spectrum.values[i - 1], unit_column(i), first != last, first, last, {}, spectrum};
  for (std::size_t k = first; k <= last; ++k) result.basis.push_back(unit_column(k));
  return result;
}

#define HML_INSTANTIATE_SPECTRA(T)                                                                                 \
  template struct SpectralResult<T>;                                                                               \
  template SpectralResult<T> make_spectral_result<T>(std::vector<T>, const PrecisionContext&);                     \
  template SpectralResult<T> symmetric_eigenvalues<T>(const DenseMatrix<T>&, const PrecisionContext&,              \
                                                      std::optional<T>, JacobiOptions);                            \
  template SpectralResult<T> singular_values<T>(const DenseMatrix<T>&, const PrecisionContext&, std::optional<T>, \
                                                JacobiOptions);                                                    \
  template SpectralResult<T> hilbert_eigenvalues<T>(std::size_t, const PrecisionContext&);                         \
  template class DenseMap<T>;                                                                                      \
  template PowerIterationResult<T> top_singular_pair<T>(const DenseMatrix<T>&, const PrecisionContext&, const T&,  \
                                                        int);                                                      \
  template SingularVectorResult<T> singular_vector<T>(const DenseMatrix<T>&, std::size_t, const PrecisionContext&, \
                                                      SingularSide);

HML_INSTANTIATE_SPECTRA(double)
HML_INSTANTIATE_SPECTRA(BigFloat)
#undef HML_INSTANTIATE_SPECTRA

}  // namespace hml
