#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdio>
#include <span>
#include <string>

#include "hml/core/bigfloat.hpp"
#include "hml/core/precision.hpp"
#include "hml/core/rational.hpp"

namespace hml {

/// The two working-precision scalar types: IEEE double and MPFR BigFloat.
template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, BigFloat>;

/// Runs `fn.template operator()<T>()` with T chosen by the context's mode.
template <class Fn>
decltype(auto) with_scalar(const PrecisionContext& ctx, Fn&& fn) {
  if (ctx.is_hardware()) {
    return fn.template operator()<double>();
  }
  return fn.template operator()<BigFloat>();
}

template <Scalar T>
T make_scalar(double value, const PrecisionContext& ctx) {
  if constexpr (std::same_as<T, double>) {
    (void)ctx;
    return value;
  } else {
    return BigFloat(value, ctx.bits());
  }
}

/// Round-to-nearest value of an exact rational at the context precision.
template <Scalar T>
T to_scalar(const Rational& r, const PrecisionContext& ctx) {
  if constexpr (std::same_as<T, double>) {
    return BigFloat(r, 53).to_double();
  } else {
    return BigFloat(r, ctx.bits());
  }
}

/// coefficient * sqrt(radicand), evaluated with guard bits and rounded once
/// more to the target.
template <Scalar T>
T to_scalar(const Surd& s, const PrecisionContext& ctx) {
  if (s.radicand == Rational(1)) {
    return to_scalar<T>(s.coefficient, ctx);
  }
  const long bits = ctx.bits() + 16;
  BigFloat value = BigFloat(s.coefficient, bits) * sqrt(BigFloat(s.radicand, bits));
  if constexpr (std::same_as<T, double>) {
    return value.to_double();
  } else {
    mpfr_prec_round(value.get(), ctx.bits(), MPFR_RNDN);
    return value;
  }
}

/// num/den * sqrt(radicand) for integer data, evaluated with guard bits.
/// Skips canonicalizing a Rational when entries are streamed.
template <Scalar T>
T quotient_to_scalar(const mpz_class& num, const mpz_class& den, unsigned long radicand, const PrecisionContext& ctx) {
  const long bits = ctx.bits() + 16;
  BigFloat n(bits);
  BigFloat d(bits);
  mpfr_set_z(n.get(), num.get_mpz_t(), MPFR_RNDN);
  mpfr_set_z(d.get(), den.get_mpz_t(), MPFR_RNDN);
  n /= d;
  if (radicand != 1) {
    BigFloat r(bits);
    mpfr_sqrt_ui(r.get(), radicand, MPFR_RNDN);
    n *= r;
  }
  if constexpr (std::same_as<T, double>) {
    return n.to_double();
  } else {
    mpfr_prec_round(n.get(), ctx.bits(), MPFR_RNDN);
    return n;
  }
}

template <Scalar T>
T pi_value(const PrecisionContext& ctx) {
  if constexpr (std::same_as<T, double>) {
    return 3.14159265358979323846;
  } else {
    return big_pi(ctx.bits());
  }
}

/// 10^exponent at the context precision.
template <Scalar T>
T decimal_power(int exponent, const PrecisionContext& ctx) {
  if constexpr (std::same_as<T, double>) {
    return std::pow(10.0, exponent);
  } else {
    BigFloat r(ctx.bits());
    mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent), MPFR_RNDN);
    if (exponent < 0) {
      mpfr_ui_div(r.get(), 1, r.get(), MPFR_RNDN);
    }
    return r;
  }
}

/// Unit roundoff of the working precision, 2^(1 - bits).
template <Scalar T>
T unit_roundoff(const PrecisionContext& ctx) {
  if constexpr (std::same_as<T, double>) {
    return 0x1p-52;
  } else {
    BigFloat r(1.0, ctx.bits());
    mpfr_mul_2si(r.get(), r.get(), 1 - ctx.bits(), MPFR_RNDN);
    return r;
  }
}

inline double to_double(double x) { return x; }

template <Scalar T>
std::string format_scientific(const T& x, int significant_digits) {
  if constexpr (std::same_as<T, double>) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.*e", significant_digits - 1, x);
    return buffer;
  } else {
    return x.to_string(significant_digits);
  }
}

/// Inner kernels shared by the factorizations. The BigFloat overloads work in
/// place on preallocated temporaries.
namespace kernels {

inline void dot(std::span<const double> a, std::span<const double> b, double& out) {
  // Four independent partial sums let the compiler pipeline the loop.
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n = a.size();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    s[0] += a[k] * b[k];
    s[1] += a[k + 1] * b[k + 1];
    s[2] += a[k + 2] * b[k + 2];
    s[3] += a[k + 3] * b[k + 3];
  }
  for (; k < n; ++k) s[0] += a[k] * b[k];
  out = (s[0] + s[1]) + (s[2] + s[3]);
}

void dot(std::span<const BigFloat> a, std::span<const BigFloat> b, BigFloat& out);

/// Correctly rounded dot product (exact accumulation, single rounding).
double accurate_dot(std::span<const double> a, std::span<const double> b);
BigFloat accurate_dot(std::span<const BigFloat> a, std::span<const BigFloat> b, long bits);

/// x <- c x - s y, y <- s x + c y.
inline void rotate(std::span<double> x, std::span<double> y, double c, double s) {
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double xk = x[k];
    const double yk = y[k];
    x[k] = c * xk - s * yk;
    y[k] = s * xk + c * yk;
  }
}

void rotate(std::span<BigFloat> x, std::span<BigFloat> y, const BigFloat& c, const BigFloat& s);

/// y <- y - alpha x.
inline void axpy_minus(std::span<double> y, double alpha, std::span<const double> x) {
  for (std::size_t k = 0; k < y.size(); ++k) y[k] -= alpha * x[k];
}

void axpy_minus(std::span<BigFloat> y, const BigFloat& alpha, std::span<const BigFloat> x);

}  // namespace kernels

}  // namespace hml
