#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace hml {

/// Exact fraction with arbitrary-size numerator and denominator.
///
/// Always canonical: lowest terms, positive denominator. Division by zero
/// throws std::domain_error instead of trapping inside GMP.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  Rational(const mpz_class& numerator, const mpz_class& denominator);
  explicit Rational(const mpz_class& integer) : value_(integer) {}
  explicit Rational(mpq_class value);

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  Rational abs() const;
  Rational pow(unsigned exponent) const;
  Rational reciprocal() const;

  /// Decimal approximation; exact conversion is to_scalar().
  double approx() const { return value_.get_d(); }
  std::string str() const { return value_.get_str(); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_;
};

/// coefficient * sqrt(radicand), radicand >= 0.
///
/// Carries the square-root normalizations (sqrt(2j-1), h^(-1/2)) exactly until
/// a single scalarization.
struct Surd {
  Rational coefficient;
  Rational radicand{1};

  Surd() = default;
  Surd(Rational c) : coefficient(std::move(c)) {}  // NOLINT(google-explicit-constructor)
  Surd(Rational c, Rational r);

  /// The exact square of the value, with sign lost.
  Rational square() const { return coefficient * coefficient * radicand; }
  int sign() const { return radicand.is_zero() ? 0 : coefficient.sign(); }
  bool is_zero() const { return sign() == 0; }

  Surd operator-() const { return Surd(-coefficient, radicand); }
  friend Surd operator*(const Surd& a, const Surd& b);
  friend Surd operator*(const Surd& a, const Rational& b) { return Surd(a.coefficient * b, a.radicand); }
  /// Requires equal radicands (or one side zero).
  friend Surd operator+(const Surd& a, const Surd& b);
  friend Surd operator-(const Surd& a, const Surd& b) { return a + (-b); }
  /// Compares values exactly, including the sign.
  friend bool operator==(const Surd& a, const Surd& b);

  std::string str() const;
};

/// Binomial coefficient C(n, k) as an exact integer.
mpz_class binomial(unsigned long n, unsigned long k);

}  // namespace hml
