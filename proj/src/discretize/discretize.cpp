#include "hml/discretize/discretize.hpp"

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "hml/core/errors.hpp"
#include "hml/operators/legendre.hpp"

namespace hml {

namespace {

long as_long(std::size_t v) { return static_cast<long>(v); }

void require_square(std::size_t rows, std::size_t cols, const char* what) {
  if (rows != cols) {
    throw std::invalid_argument(std::string(what) + " needs a square matrix, got " + std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
}

// Integer powers k^e for k = 0..n, advanced one exponent at a time.
class PowerTable {
 public:
  PowerTable(std::size_t n, unsigned long exponent) : powers_(n + 1) {
    for (std::size_t k = 0; k <= n; ++k) {
      mpz_ui_pow_ui(powers_[k].get_mpz_t(), k, exponent);
    }
  }
  void advance() {
    for (std::size_t k = 0; k < powers_.size(); ++k) powers_[k] *= static_cast<unsigned long>(k);
  }
  const mpz_class& operator[](std::size_t k) const { return powers_[k]; }

 private:
  std::vector<mpz_class> powers_;
};

// Numerator and denominator of int_0^1 t^(j-1) r_k(t) dt for the unit-slope
// ramp r_k of cell k (0 before, t-(k-1)h on, h after), without the sqrt(n)
// normalization: [(j+1) n^j - k^(j+1) + (k-1)^(j+1)] / (n^(j+1) j (j+1)).
// `next` holds k^(j+1), `nj` holds n^j.
mpz_class ramp_moment_numerator(unsigned long j, const mpz_class& nj, const PowerTable& next, std::size_t k) {
  return (j + 1) * nj - next[k] + next[k - 1];
}

}  // namespace

GridSpec::GridSpec(std::size_t cells) : n(cells) {
  if (cells == 0) throw std::invalid_argument("grid needs at least one cell");
}

bool GridSpec::basis_is_orthonormal() const {
  // Disjoint supports give orthogonality; each norm is h * (h^(-1/2))^2.
  return width() * Rational(as_long(n)) == Rational(1);
}

std::string_view to_string(DiscretizationScheme scheme) {
  return scheme == DiscretizationScheme::kExactGramian ? "exact-gramian" : "product-form";
}

DiscretizationScheme parse_scheme(std::string_view name) {
  if (name == "exact-gramian") return DiscretizationScheme::kExactGramian;
  if (name == "product-form" || name == "product") return DiscretizationScheme::kProductForm;
  throw std::invalid_argument("unknown discretization scheme '" + std::string(name) +
                              "' (expected exact-gramian or product)");
}

DenseMatrix<Rational> hilbert_segment(std::size_t n) {
  DenseMatrix<Rational> h(n, n, Rational(0), "H_" + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) h(i, j) = Rational(1, as_long(i + j + 1));
  }
  return h;
}

template <Scalar T>
DenseMatrix<T> cholesky_factor(const DenseMatrix<T>& m, const PrecisionContext& ctx) {
  using std::sqrt;
  require_square(m.rows(), m.cols(), "Cholesky");
  const std::size_t n = m.rows();
  DenseMatrix<T> l(n, n, m(0, 0) * 0.0, "L_" + std::to_string(n));
  T s = m(0, 0);
  for (std::size_t j = 0; j < n; ++j) {
    kernels::dot(l.row(j).first(j), l.row(j).first(j), s);
    T pivot = m(j, j) - s;
    if (!(pivot > 0.0)) throw PivotFailure(j + 1, to_double(pivot), ctx.digits());
    l(j, j) = sqrt(pivot);
    for (std::size_t i = j + 1; i < n; ++i) {
      kernels::dot(l.row(i).first(j), l.row(j).first(j), s);
      l(i, j) = (m(i, j) - s) / l(j, j);
    }
  }
  return l;
}

template <Scalar T>
DenseMatrix<T> exact_cholesky_factor(const DenseMatrix<Rational>& m, const PrecisionContext& ctx) {
  require_square(m.rows(), m.cols(), "Cholesky");
  const std::size_t n = m.rows();
  DenseMatrix<Rational> unit(n, n, Rational(0));
  std::vector<Rational> d(n);
  for (std::size_t j = 0; j < n; ++j) {
    mpq_class pivot = m(j, j).raw();
    for (std::size_t k = 0; k < j; ++k) pivot -= unit(j, k).raw() * unit(j, k).raw() * d[k].raw();
    d[j] = Rational(pivot);
    if (d[j].sign() <= 0) throw PivotFailure(j + 1, d[j].approx(), ctx.digits());
    unit(j, j) = Rational(1);
    for (std::size_t i = j + 1; i < n; ++i) {
      mpq_class s = m(i, j).raw();
      for (std::size_t k = 0; k < j; ++k) s -= unit(i, k).raw() * unit(j, k).raw() * d[k].raw();
      unit(i, j) = Rational(mpq_class(s / d[j].raw()));
    }
  }
  DenseMatrix<T> l(n, n, make_scalar<T>(0.0, ctx), "L_" + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) l(i, j) = to_scalar<T>(Surd(unit(i, j), d[j]), ctx);
  }
  return l;
}

template <Scalar T>
T cholesky_relative_residual(const DenseMatrix<T>& l, const DenseMatrix<T>& m) {
  const DenseMatrix<T> product = matmul(l, transpose(l));
  return frobenius(subtract(product, m)) / frobenius(m);
}

DenseMatrix<Rational> j_matrix(const GridSpec& grid) {
  const std::size_t n = grid.n;
  const Rational h = grid.width();
  const Rational half = h / Rational(2);
  DenseMatrix<Rational> j(n, n, Rational(0), "J_" + std::to_string(n));
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < m; ++k) j(m, k) = h;
    j(m, m) = half;
  }
  return j;
}

DenseMatrix<Surd> bh_matrix(const GridSpec& grid, std::size_t rows) {
  const std::size_t n = grid.n;
  const Rational radicand(as_long(n));
  DenseMatrix<Surd> b(rows, n, Surd(), "B_" + std::to_string(n));
  PowerTable powers(n, 1);
  mpz_class nj = as_long(n);
  for (std::size_t j = 1; j <= rows; ++j) {
    const mpz_class denominator = nj * as_long(j);
    for (std::size_t k = 1; k <= n; ++k) {
      b(j - 1, k - 1) = Surd(Rational(powers[k] - powers[k - 1], denominator), radicand);
    }
    powers.advance();
    nj *= as_long(n);
  }
  return b;
}

template <Scalar T>
DenseMatrix<T> bh_matrix(const GridSpec& grid, std::size_t rows, const PrecisionContext& ctx) {
  const std::size_t n = grid.n;
  DenseMatrix<T> b(rows, n, make_scalar<T>(0.0, ctx), "B_" + std::to_string(n));
  PowerTable powers(n, 1);
  mpz_class nj = as_long(n);
  for (std::size_t j = 1; j <= rows; ++j) {
    const mpz_class denominator = nj * as_long(j);
    for (std::size_t k = 1; k <= n; ++k) {
      b(j - 1, k - 1) = quotient_to_scalar<T>(powers[k] - powers[k - 1], denominator, n, ctx);
    }
    powers.advance();
    nj *= as_long(n);
  }
  return b;
}

DenseMatrix<Surd> a_matrix_exact(const GridSpec& grid) {
  const std::size_t n = grid.n;
  const Rational radicand(as_long(n));
  DenseMatrix<Surd> a(n, n, Surd(), "A_" + std::to_string(n));
  PowerTable next(n, 2);
  mpz_class nj = as_long(n);
  for (unsigned long j = 1; j <= n; ++j) {
    const mpz_class denominator = nj * as_long(n) * (j * (j + 1));
    for (std::size_t k = 1; k <= n; ++k) {
      a(j - 1, k - 1) = Surd(Rational(ramp_moment_numerator(j, nj, next, k), denominator), radicand);
    }
    next.advance();
    nj *= as_long(n);
  }
  return a;
}

template <Scalar T>
DenseMatrix<T> a_matrix(const GridSpec& grid, DiscretizationScheme scheme, const PrecisionContext& ctx) {
  const std::size_t n = grid.n;
  if (scheme == DiscretizationScheme::kProductForm) {
    // (B J)(j,k) = h * sum_{m>k} B(j,m) + (h/2) B(j,k): one suffix sum per row.
    DenseMatrix<T> a = bh_matrix<T>(grid, n, ctx);
    a.set_label("A_" + std::to_string(n) + " (product-form)");
    const T h = to_scalar<T>(grid.width(), ctx);
    const T half_h = h / 2.0;
    for (std::size_t j = 0; j < n; ++j) {
      T suffix = make_scalar<T>(0.0, ctx);
      for (std::size_t k = n; k-- > 0;) {
        T b = a(j, k);
        a(j, k) = h * suffix + half_h * b;
        suffix += b;
      }
    }
    return a;
  }
  DenseMatrix<T> a(n, n, make_scalar<T>(0.0, ctx), "A_" + std::to_string(n));
  PowerTable next(n, 2);
  mpz_class nj = as_long(n);
  for (unsigned long j = 1; j <= n; ++j) {
    const mpz_class denominator = nj * as_long(n) * (j * (j + 1));
    for (std::size_t k = 1; k <= n; ++k) {
      a(j - 1, k - 1) = quotient_to_scalar<T>(ramp_moment_numerator(j, nj, next, k), denominator, n, ctx);
    }
    next.advance();
    nj *= as_long(n);
  }
  return a;
}

DenseMatrix<Surd> legendre_gramian(std::size_t n) {
  DenseMatrix<Surd> g(n, n, Surd(), "G_" + std::to_string(n) + "^A");
  for (std::size_t j = 1; j <= n; ++j) g(0, j - 1) = Surd(Rational(1, as_long(j + 1)));
  for (std::size_t i = 2; i <= n; ++i) {
    const LegendrePolynomial p(static_cast<int>(i));
    const Rational radicand(as_long(2 * i - 1));
    for (std::size_t j = 1; j <= n; ++j) {
      // Sign follows the moment-basis transcription <L_i, h_j>/(j sqrt(2j+1));
      // integrating by parts gives the opposite sign for i >= 2, which only
      // flips rows and leaves the singular values unchanged.
      g(i - 1, j - 1) = Surd(p.unnormalized_moment(static_cast<int>(j)) / Rational(as_long(j)), radicand);
    }
  }
  return g;
}

DenseMatrix<Surd> qj_gramian(const GridSpec& grid, std::size_t rows) {
  const std::size_t n = grid.n;
  // moments[p][k-1] = int_0^1 t^p r_k(t) dt for the unit-slope ramp r_k.
  std::vector<std::vector<mpq_class>> moments(rows, std::vector<mpq_class>(n));
  PowerTable next(n, 2);
  mpz_class nj = as_long(n);
  for (unsigned long j = 1; j <= rows; ++j) {
    const mpz_class denominator = nj * as_long(n) * (j * (j + 1));
    for (std::size_t k = 1; k <= n; ++k) {
      moments[j - 1][k - 1] = mpq_class(ramp_moment_numerator(j, nj, next, k), denominator);
      moments[j - 1][k - 1].canonicalize();
    }
    next.advance();
    nj *= as_long(n);
  }
  DenseMatrix<Surd> q(rows, n, Surd(), "QJ_" + std::to_string(n));
  for (std::size_t m = 1; m <= rows; ++m) {
    const LegendrePolynomial p(static_cast<int>(m));
    const Rational radicand(as_long((2 * m - 1) * n));
    for (std::size_t k = 0; k < n; ++k) {
      mpq_class sum;
      for (std::size_t e = 0; e < m; ++e) sum += p.coefficients()[e] * moments[e][k];
      q(m - 1, k) = Surd(Rational(std::move(sum)), radicand);
    }
  }
  return q;
}

template <Scalar T>
T factorization_identity_gap(std::size_t n, const PrecisionContext& ctx) {
  const GridSpec grid(n);
  const DenseMatrix<T> l = exact_cholesky_factor<T>(hilbert_segment(n), ctx);
  DenseMatrix<T> qj = scalarize<T>(qj_gramian(grid, n), ctx);
  for (std::size_t m = 1; m < n; m += 2) {
    for (auto& e : qj.row(m)) e = -e;
  }
  const DenseMatrix<T> a = scalarize<T>(a_matrix_exact(grid), ctx);
  return max_abs_difference(matmul(l, qj), a);
}

DenseMatrix<Rational> padded_difference(std::size_t n, std::size_t base) {
  if (base < 1 || n < base) {
    throw std::invalid_argument("padded difference needs 1 <= base <= n, got base " + std::to_string(base) +
                                ", n " + std::to_string(n));
  }
  DenseMatrix<Rational> d(n, n, Rational(0), "H_" + std::to_string(n) + "-H_" + std::to_string(base));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i >= base || j >= base) d(i, j) = Rational(1, as_long(i + j + 1));
    }
  }
  return d;
}

template <Scalar T>
T padded_difference_frobenius(std::size_t n, std::size_t base, const PrecisionContext& ctx) {
  if (base < 1 || n < base) throw std::invalid_argument("padded difference needs 1 <= base <= n");
  // Entries on the anti-diagonal i+j-1 = s: pairs in [1,n]^2 minus pairs in
  // [1,base]^2. Summed from the small tail upward.
  auto pairs = [](std::size_t s, std::size_t size) -> std::size_t {
    if (s > 2 * size - 1) return 0;
    return s <= size ? s : 2 * size - s;
  };
  using std::sqrt;
  T sum = make_scalar<T>(0.0, ctx);
  for (std::size_t s = 2 * n - 1; s >= 1; --s) {
    const std::size_t count = pairs(s, n) - pairs(s, base);
    if (count == 0) continue;
    sum += to_scalar<T>(Rational(as_long(count), as_long(s * s)), ctx);
  }
  return sqrt(sum);
}

template <Scalar T>
PaddedHilbertDifference<T>::PaddedHilbertDifference(std::size_t n, std::size_t base, const PrecisionContext& ctx)
    : n_(n), base_(base) {
  if (base < 1 || n < base) throw std::invalid_argument("padded difference needs 1 <= base <= n");
  hankel_.reserve(2 * n);
  for (std::size_t s = 0; s < 2 * n; ++s) hankel_.push_back(to_scalar<T>(Rational(1, as_long(s + 1)), ctx));
}

template <Scalar T>
void PaddedHilbertDifference<T>::apply(const std::vector<T>& x, std::vector<T>& y) const {
  if (x.size() != n_) throw std::invalid_argument("operand length does not match operator size");
  y.assign(n_, hankel_[0] * 0.0);
  const std::span<const T> xs(x);
  const std::span<const T> c(hankel_);
  for (std::size_t i = 0; i < n_; ++i) {
    // Rows inside the zeroed block only see columns from base on.
    const std::size_t start = i < base_ ? base_ : 0;
    kernels::dot(c.subspan(i + start, n_ - start), xs.subspan(start), y[i]);
  }
}

template <Scalar T>
HilbertLowRankFactor<T> hilbert_low_rank_factor(std::size_t n, const T& trace_tolerance, const PrecisionContext& ctx) {
  using std::abs;
  using std::sqrt;
  if (n == 0) throw std::invalid_argument("Hilbert factor needs n >= 1");
  // Schur complement after pivots p_1..p_k: S_ij = g_i g_j / (i+j-1) with
  // g_i = prod_m (i-p_m)/(i+p_m-1).
  std::vector<T> g(n, make_scalar<T>(1.0, ctx));
  std::vector<bool> used(n, false);
  std::vector<std::vector<T>> columns;
  std::vector<std::size_t> pivots;
  T remainder = make_scalar<T>(0.0, ctx);
  for (std::size_t i = 1; i <= n; ++i) remainder += make_scalar<T>(1.0, ctx) / static_cast<double>(2 * i - 1);
  while (pivots.size() < n && remainder > trace_tolerance) {
    std::size_t p = 0;
    T best = make_scalar<T>(-1.0, ctx);
    for (std::size_t i = 1; i <= n; ++i) {
      if (used[i - 1]) continue;
      T diag = g[i - 1] * g[i - 1] / static_cast<double>(2 * i - 1);
      if (diag > best) {
        best = diag;
        p = i;
      }
    }
    if (!(best > 0.0)) break;
    const T scale = sqrt(make_scalar<T>(static_cast<double>(2 * p - 1), ctx)) * (g[p - 1] > 0.0 ? 1.0 : -1.0);
    std::vector<T> column;
    column.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
      column.push_back(g[i - 1] * scale / static_cast<double>(i + p - 1));
    }
    columns.push_back(std::move(column));
    pivots.push_back(p);
    used[p - 1] = true;
    remainder = make_scalar<T>(0.0, ctx);
    for (std::size_t i = 1; i <= n; ++i) {
      g[i - 1] *= static_cast<double>(i) - static_cast<double>(p);
      g[i - 1] /= static_cast<double>(i + p - 1);
      if (!used[i - 1]) remainder += g[i - 1] * g[i - 1] / static_cast<double>(2 * i - 1);
    }
  }
  const std::size_t r = columns.size();
  DenseMatrix<T> factor(n, r, make_scalar<T>(0.0, ctx), "G_" + std::to_string(n));
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t i = 0; i < n; ++i) factor(i, k) = columns[k][i];
  }
  return HilbertLowRankFactor<T>{std::move(factor), std::move(pivots), std::move(remainder)};
}

#define HML_INSTANTIATE_DISCRETIZE(T)                                                                           \
  template DenseMatrix<T> cholesky_factor<T>(const DenseMatrix<T>&, const PrecisionContext&);                  \
  template DenseMatrix<T> exact_cholesky_factor<T>(const DenseMatrix<Rational>&, const PrecisionContext&);     \
  template T cholesky_relative_residual<T>(const DenseMatrix<T>&, const DenseMatrix<T>&);                      \
  template DenseMatrix<T> bh_matrix<T>(const GridSpec&, std::size_t, const PrecisionContext&);                 \
  template DenseMatrix<T> a_matrix<T>(const GridSpec&, DiscretizationScheme, const PrecisionContext&);         \
  template T factorization_identity_gap<T>(std::size_t, const PrecisionContext&);                              \
  template T padded_difference_frobenius<T>(std::size_t, std::size_t, const PrecisionContext&);                \
  template class PaddedHilbertDifference<T>;                                                                    \
  template HilbertLowRankFactor<T> hilbert_low_rank_factor<T>(std::size_t, const T&, const PrecisionContext&);

HML_INSTANTIATE_DISCRETIZE(double)
HML_INSTANTIATE_DISCRETIZE(BigFloat)
#undef HML_INSTANTIATE_DISCRETIZE

}  // namespace hml
