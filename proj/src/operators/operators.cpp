#include "hml/operators/operators.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hml {

namespace {

template <Scalar T>
void require_unit_interval(const T& x, const char* what) {
  if (!(x >= 0.0) || !(x <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0,1], got " + format_scientific(x, 6));
  }
}

// Series sum_j x^j/j^2 for 0 <= x <= 1/2. The remainder after J terms is
// below x^(J+1) / ((J+1)^2 (1-x)) <= 2 x^(J+1)/(J+1)^2.
template <Scalar T>
T dilog_series(const T& x, const PrecisionContext& ctx) {
  const T eps = unit_roundoff<T>(ctx);
  T sum = make_scalar<T>(0.0, ctx);
  T power = make_scalar<T>(1.0, ctx);
  for (long j = 1;; ++j) {
    power *= x;
    const double jj = static_cast<double>(j) * static_cast<double>(j);
    sum += power / jj;
    const double next = static_cast<double>(j + 1) * static_cast<double>(j + 1);
    if (power * x * 2.0 / next <= eps * sum) break;
  }
  return sum;
}

}  // namespace

template <Scalar T>
T hausdorff_moment(const GridFunction<T>& z, int j, const PrecisionContext& ctx) {
  if (j < 1) throw std::invalid_argument("moment index must be >= 1, got " + std::to_string(j));
  const unsigned long n = z.size();
  const auto exponent = static_cast<unsigned long>(j);
  mpz_class denominator;
  mpz_ui_pow_ui(denominator.get_mpz_t(), n, exponent);
  denominator *= j;
  mpz_class previous = 0;  // (k-1)^j
  mpz_class current;
  T sum = make_scalar<T>(0.0, ctx);
  for (unsigned long k = 1; k <= n; ++k) {
    mpz_ui_pow_ui(current.get_mpz_t(), k, exponent);
    const mpz_class increment = current - previous;
    sum += z[k - 1] * quotient_to_scalar<T>(increment, denominator, 1, ctx);
    previous = current;
  }
  return sum;
}

template <Scalar T>
Antiderivative<T>::Antiderivative(const GridFunction<T>& x) : slopes_(x.values()) {
  const double n = static_cast<double>(x.size());
  nodes_.reserve(x.size() + 1);
  nodes_.push_back(x[0] * 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    nodes_.push_back(nodes_.back() + x[k] / n);
  }
}

template <Scalar T>
T Antiderivative<T>::operator()(const T& s) const {
  require_unit_interval(s, "antiderivative argument");
  const std::size_t n = slopes_.size();
  const double scaled = to_double(s) * static_cast<double>(n);
  const std::size_t k = std::min(n - 1, static_cast<std::size_t>(std::floor(scaled)));
  // The interpolant is continuous, so a cell index off by one at a node is harmless.
  return nodes_[k] + slopes_[k] * (s - static_cast<double>(k) / static_cast<double>(n));
}

template <Scalar T>
SingularTriple<T> j_singular_triple(int i, std::size_t n, const PrecisionContext& ctx) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  if (i < 1) throw std::invalid_argument("singular index must be >= 1, got " + std::to_string(i));
  if (n == 0) throw std::invalid_argument("grid needs at least one cell");
  const T pi = pi_value<T>(ctx);
  const T frequency = pi * (static_cast<double>(i) - 0.5);
  const T root2 = sqrt(make_scalar<T>(2.0, ctx));
  std::vector<T> u;
  std::vector<T> v;
  u.reserve(n);
  v.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const T angle = frequency * GridFunction<T>::midpoint(k, n, ctx);
    u.push_back(root2 * cos(angle));
    v.push_back(root2 * sin(angle));
  }
  T sigma = 2.0 / (pi * static_cast<double>(2 * i - 1));
  return SingularTriple<T>{std::move(sigma), GridFunction<T>(n, std::move(u)), GridFunction<T>(n, std::move(v))};
}

template <Scalar T>
T dilog(const T& x, const PrecisionContext& ctx) {
  using std::log;
  require_unit_interval(x, "dilog argument");
  const T pi = pi_value<T>(ctx);
  const T zeta2 = pi * pi / 6.0;
  if (x == 1.0) return zeta2;
  if (x <= 0.5) return dilog_series(x, ctx);
  const T y = 1.0 - x;
  return zeta2 - log(x) * log(y) - dilog_series(y, ctx);
}

template <Scalar T>
T kernel_k(const T& s, const T& t, const PrecisionContext& ctx) {
  require_unit_interval(s, "kernel argument s");
  require_unit_interval(t, "kernel argument t");
  if (s == 1.0 || t == 1.0) return make_scalar<T>(0.0, ctx);
  // Evaluating on the ordered pair makes k(s,t) and k(t,s) bit-identical.
  const T& a = s <= t ? s : t;
  const T& b = s <= t ? t : s;
  const T pi = pi_value<T>(ctx);
  return pi * pi / 6.0 - dilog(a, ctx) - dilog(b, ctx) + dilog(T(a * b), ctx);
}

template <Scalar T>
T kernel_ds_partial_sum(const T& s, const T& t, long terms, const PrecisionContext& ctx) {
  if (terms < 1) throw std::invalid_argument("partial sum needs at least one term");
  require_unit_interval(t, "kernel argument t");
  if (!(s >= 0.0) || !(s < 1.0)) {
    throw std::domain_error("derivative series diverges unless 0 <= s < 1, got s = " + format_scientific(s, 6));
  }
  T sum = make_scalar<T>(0.0, ctx);
  T s_power = make_scalar<T>(1.0, ctx);  // s^(j-1)
  T t_power = t;                         // t^j
  for (long j = 1; j <= terms; ++j) {
    sum -= s_power * (1.0 - t_power) / static_cast<double>(j);
    s_power *= s;
    t_power *= t;
  }
  return sum;
}

template <Scalar T>
T phi(long n, const PrecisionContext& ctx) {
  using std::exp;
  using std::log;
  if (n < 1) throw std::invalid_argument("phi needs n >= 1, got " + std::to_string(n));
  const T pi = pi_value<T>(ctx);
  const T argument = make_scalar<T>(static_cast<double>(8 * n - 4), ctx);
  return exp(-(pi * pi) / (2.0 * log(argument)));
}

#define HML_INSTANTIATE_OPERATORS(T)                                                           \
  template T hausdorff_moment<T>(const GridFunction<T>&, int, const PrecisionContext&);        \
  template class Antiderivative<T>;                                                            \
  template SingularTriple<T> j_singular_triple<T>(int, std::size_t, const PrecisionContext&); \
  template T dilog<T>(const T&, const PrecisionContext&);                                      \
  template T kernel_k<T>(const T&, const T&, const PrecisionContext&);                         \
  template T kernel_ds_partial_sum<T>(const T&, const T&, long, const PrecisionContext&);      \
  template T phi<T>(long, const PrecisionContext&);

HML_INSTANTIATE_OPERATORS(double)
HML_INSTANTIATE_OPERATORS(BigFloat)
#undef HML_INSTANTIATE_OPERATORS

}  // namespace hml
