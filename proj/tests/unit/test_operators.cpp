#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "hml/operators/legendre.hpp"
#include "hml/operators/operators.hpp"

using namespace hml;

namespace {

const double kPi = 3.14159265358979323846;

// sum_{j=1}^{J} x^j/j^2 in BigFloat with the tail bounded by
// x^(J+1)/((J+1)^2 (1-x)) below 10^-(digits+5).
BigFloat dilog_series_oracle(const BigFloat& x, int digits) {
  const long bits = bits_for_digits(digits) + 32;
  BigFloat sum(0.0, bits);
  BigFloat power(1.0, bits);
  const double xd = x.to_double();
  for (long j = 1;; ++j) {
    power *= x;
    sum += power / static_cast<double>(j * j);
    const double tail = std::pow(xd, static_cast<double>(j + 1)) / ((j + 1.0) * (j + 1.0) * (1.0 - xd));
    if (tail < std::pow(10.0, -digits - 5)) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("legendre low orders") {
  const auto l1 = legendre(1);
  CHECK(l1.degree() == 0);
  CHECK(l1.coefficients() == std::vector<mpz_class>{1});
  CHECK(l1.normalization().square() == Rational(1));
  const auto l2 = legendre(2);
  CHECK(l2.coefficients() == std::vector<mpz_class>{1, -2});
  CHECK(l2.normalization().square() == Rational(3));
  const auto l3 = legendre(3);
  CHECK(l3.coefficients() == std::vector<mpz_class>{1, -6, 6});
  CHECK(l3.normalization().square() == Rational(5));
  CHECK_THROWS(legendre(0));
}

TEST_CASE("legendre degree and exact orthonormality up to 10") {
  for (int i = 1; i <= 10; ++i) {
    const auto li = legendre(i);
    CHECK(static_cast<int>(li.coefficients().size()) == i);
    CHECK(li.coefficients().back() != 0);
    for (int j = 1; j <= 10; ++j) {
      const Surd ip = legendre_inner_product(i, j);
      CHECK(ip.square() == Rational(i == j ? 1 : 0));
      if (i == j) CHECK(ip.sign() > 0);
    }
  }
}

TEST_CASE("legendre moments match the factorial closed form") {
  CHECK(legendre_dot_monomial(1, 4).square() == Rational(1, 25));
  const Surd m21 = legendre_dot_monomial(2, 1);
  CHECK(m21.sign() < 0);
  CHECK(m21.square() == Rational(3, 36));
  CHECK(legendre_dot_monomial(3, 0).is_zero());
  for (int i = 1; i <= 8; ++i) {
    for (int j = 0; j <= 12; ++j) {
      const Surd m = legendre_dot_monomial(i, j);
      const mpq_class closed = oracle::legendre_moment_closed_form(i, j);
      CHECK(m.square() == Rational(mpq_class(closed * closed * (2 * i - 1))));
      CHECK(m.sign() == sgn(closed));
    }
  }
}

TEST_CASE("legendre evaluation at the endpoints") {
  const auto ctx = PrecisionContext::software(30);
  for (int j = 1; j <= 6; ++j) {
    const BigFloat at0 = legendre(j).evaluate(BigFloat(0.0, ctx.bits()), ctx);
    const BigFloat at1 = legendre(j).evaluate(BigFloat(1.0, ctx.bits()), ctx);
    const double root = std::sqrt(2.0 * j - 1.0);
    CHECK(at0.to_double() == doctest::Approx(root).epsilon(1e-14));
    CHECK(at1.to_double() == doctest::Approx((j % 2 == 1 ? 1 : -1) * root).epsilon(1e-14));
  }
}

TEST_CASE("hausdorff moments") {
  const auto hw = PrecisionContext::hardware();
  const auto one = GridFunction<double>::constant(7, 1.0, hw);
  CHECK(hausdorff_moment(one, 3, hw) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  for (int j = 1; j <= 20; ++j) CHECK(hausdorff_moment(one, j, hw) == doctest::Approx(1.0 / j).epsilon(1e-14));
  const GridFunction<double> half(2, {1.0, 0.0});
  CHECK(hausdorff_moment(half, 2, hw) == 0.125);
  CHECK_THROWS(hausdorff_moment(one, 0, hw));
}

TEST_CASE("cumulative integral") {
  const auto hw = PrecisionContext::hardware();
  const auto one = cumulative_integral(GridFunction<double>::constant(4, 1.0, hw));
  const auto zero = cumulative_integral(GridFunction<double>::constant(4, 0.0, hw));
  const auto ramp = cumulative_integral(GridFunction<double>(2, {2.0, 0.0}));
  for (double s : {0.0, 0.1, 0.25, 0.5, 0.77, 1.0}) {
    CHECK(one(s) == doctest::Approx(s).epsilon(1e-15));
    CHECK(zero(s) == 0.0);
    CHECK(ramp(s) == doctest::Approx(std::min(2 * s, 1.0)).epsilon(1e-15));
  }
  CHECK(one(0.0) == 0.0);
  CHECK_THROWS(one(1.5));
}

TEST_CASE("analytic singular system of the integration operator") {
  const auto hw = PrecisionContext::hardware();
  CHECK(j_singular_triple<double>(1, 8, hw).sigma == doctest::Approx(2.0 / kPi).epsilon(1e-15));
  CHECK(j_singular_triple<double>(2, 8, hw).sigma == doctest::Approx(2.0 / (3 * kPi)).epsilon(1e-15));
  for (int i = 1; i <= 20; ++i) {
    const double ratio = j_singular_triple<double>(i, 4, hw).sigma / j_singular_triple<double>(i + 1, 4, hw).sigma;
    CHECK(ratio == doctest::Approx((2.0 * i + 1) / (2.0 * i - 1)).epsilon(1e-14));
  }
  const auto t = j_singular_triple<double>(3, 10, hw);
  for (std::size_t k = 0; k < 10; ++k) {
    const double x = (k + 0.5) / 10;
    CHECK(t.u[k] == doctest::Approx(std::sqrt(2.0) * std::cos(2.5 * kPi * x)).epsilon(1e-14));
    CHECK(t.v[k] == doctest::Approx(std::sqrt(2.0) * std::sin(2.5 * kPi * x)).epsilon(1e-14));
  }
}

TEST_CASE("dilogarithm values") {
  const auto hw = PrecisionContext::hardware();
  CHECK(dilog(0.0, hw) == 0.0);
  CHECK(dilog(1.0, hw) == doctest::Approx(kPi * kPi / 6).epsilon(1e-15));
  // Li2(1/2) = pi^2/12 - ln(2)^2/2.
  CHECK(dilog(0.5, hw) == doctest::Approx(kPi * kPi / 12 - std::log(2.0) * std::log(2.0) / 2).epsilon(1e-14));
  CHECK(dilog(0.5, hw) == doctest::Approx(0.5822405).epsilon(1e-7));
  CHECK_THROWS_AS(dilog(-0.1, hw), std::domain_error);
  CHECK_THROWS_AS(dilog(1.1, hw), std::domain_error);
}

TEST_CASE("dilogarithm reflection agrees with the direct series") {
  for (int digits : {15, 30}) {
    const auto ctx = PrecisionContext::for_digits(digits);
    for (int k = 1; k <= 9; ++k) {
      const auto sw = PrecisionContext::software(digits + 20);
      const BigFloat x(Rational(k, 10), sw.bits());
      const BigFloat reference = dilog_series_oracle(x, digits + 10);
      with_scalar(ctx, [&]<Scalar T>() {
        const T value = dilog(to_scalar<T>(Rational(k, 10), ctx), ctx);
        const double rel = std::abs((BigFloat(0.0, sw.bits()) + value - reference).to_double()) / reference.to_double();
        CHECK(rel <= std::pow(10.0, -digits + 3));
      });
    }
  }
}

TEST_CASE("kernel values") {
  const auto hw = PrecisionContext::hardware();
  for (double t : {0.0, 0.3, 0.999, 1.0}) {
    CHECK(kernel_k(1.0, t, hw) == 0.0);
    CHECK(kernel_k(t, 1.0, hw) == 0.0);
  }
  CHECK(kernel_k(0.0, 0.0, hw) == doctest::Approx(kPi * kPi / 6).epsilon(1e-15));
  // sum (1-2^-j)^2/j^2 with the tail below 1e-13.
  double series = 0.0;
  for (int j = 1; j <= 10000000; ++j) {
    const double f = 1.0 - std::pow(0.5, j);
    series += f * f / (static_cast<double>(j) * j);
  }
  series += 1.0 / 10000000.0;
  CHECK(kernel_k(0.5, 0.5, hw) == doctest::Approx(series).epsilon(1e-12));
  CHECK(kernel_k(0.5, 0.5, hw) == doctest::Approx(0.748106).epsilon(1e-6));
  CHECK_THROWS_AS(kernel_k(1.2, 0.5, hw), std::domain_error);
}

TEST_CASE("kernel is exactly symmetric") {
  const auto hw = PrecisionContext::hardware();
  for (int a = 0; a <= 20; ++a) {
    for (int b = 0; b <= 20; ++b) CHECK(kernel_k(a / 20.0, b / 20.0, hw) == kernel_k(b / 20.0, a / 20.0, hw));
  }
}

TEST_CASE("partial sums of the differentiated kernel") {
  const auto hw = PrecisionContext::hardware();
  for (long terms : {1L, 5L, 100L}) CHECK(kernel_ds_partial_sum(0.0, 0.5, terms, hw) == -0.5);
  for (double s : {0.0, 0.4, 0.9}) CHECK(kernel_ds_partial_sum(s, 1.0, 50, hw) == 0.0);
  CHECK(kernel_ds_partial_sum(0.9, 0.0, 10000, hw) == doctest::Approx(std::log(0.1) / 0.9).epsilon(1e-12));
  CHECK_THROWS_AS(kernel_ds_partial_sum(1.0, 0.0, 10, hw), std::domain_error);
  CHECK_THROWS_AS(kernel_ds_partial_sum(0.5, 0.0, 0, hw), std::invalid_argument);
}

TEST_CASE("the s-derivative at s = 1 diverges logarithmically") {
  const auto hw = PrecisionContext::hardware();
  double previous = 0.0;
  for (int m = 1; m <= 5; ++m) {
    const double eps = std::pow(10.0, -m);
    const double value = kernel_ds_partial_sum(1.0 - eps, 0.0, static_cast<long>(40 / eps), hw);
    CHECK(value < previous);
    // Leading order -ln(1/eps) = ln(eps).
    CHECK(value / std::log(eps) == doctest::Approx(1.0).epsilon(0.12));
    previous = value;
  }
}

TEST_CASE("damping factor") {
  const auto hw = PrecisionContext::hardware();
  CHECK(phi<double>(100, hw) == doctest::Approx(0.4777).epsilon(1e-4));
  CHECK(std::pow(phi<double>(10000, hw), 9) == doctest::Approx(0.0196).epsilon(2e-3));
  CHECK(std::pow(phi<double>(1000000000, hw), 50) == doctest::Approx(1.9982e-5).epsilon(1e-3));
  double previous_ratio = 0.0;
  for (long n = 100; n <= 1000000000; n *= 10) {
    const double p = phi<double>(n, hw);
    CHECK(p > 0.0);
    CHECK(p < phi<double>(4 * n, hw));
    CHECK(phi<double>(4 * n, hw) < 1.0);
    // 1 - phi(n) ~ (pi^2/2) / ln(8n - 4): the ratio rises toward 1.
    const double ratio = (1.0 - p) * std::log(8.0 * n - 4.0) / (kPi * kPi / 2);
    CHECK(ratio > previous_ratio);
    CHECK(ratio < 1.0);
    previous_ratio = ratio;
  }
  CHECK(phi<double>(1, hw) > 0.0);
}

TEST_CASE("damping factor at high precision matches hardware") {
  const auto sw = PrecisionContext::software(50);
  const auto hw = PrecisionContext::hardware();
  for (long n : {2L, 100L, 1000000L}) {
    CHECK(phi<BigFloat>(n, sw).to_double() == doctest::Approx(phi<double>(n, hw)).epsilon(1e-15));
  }
}
