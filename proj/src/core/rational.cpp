#include "hml/core/rational.hpp"

#include <stdexcept>

namespace hml {

namespace {

void require_nonzero(const mpz_class& denominator) {
  if (denominator == 0) {
    throw std::domain_error("rational division by zero");
  }
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  require_nonzero(mpz_class(denominator));
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
  require_nonzero(denominator);
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
  require_nonzero(value_.get_den());
  value_.canonicalize();
}

Rational& Rational::operator+=(const Rational& other) {
  value_ += other.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& other) {
  value_ -= other.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& other) {
  value_ *= other.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.is_zero()) {
    throw std::domain_error("rational division by zero");
  }
  value_ /= other.value_;
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  r.value_ = -value_;
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

Rational Rational::pow(unsigned exponent) const {
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), exponent);
  Rational r;
  r.value_ = mpq_class(num, den);  // powers of coprime integers stay coprime
  return r;
}

Rational Rational::reciprocal() const { return Rational(1) / *this; }

Surd::Surd(Rational c, Rational r) : coefficient(std::move(c)), radicand(std::move(r)) {
  if (radicand.sign() < 0) {
    throw std::domain_error("negative radicand " + radicand.str());
  }
}

Surd operator*(const Surd& a, const Surd& b) {
  if (a.radicand == b.radicand) {
    return Surd(a.coefficient * b.coefficient * a.radicand, Rational(1));
  }
  return Surd(a.coefficient * b.coefficient, a.radicand * b.radicand);
}

Surd operator+(const Surd& a, const Surd& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (!(a.radicand == b.radicand)) {
    throw std::domain_error("cannot add surds with radicands " + a.radicand.str() + " and " + b.radicand.str());
  }
  return Surd(a.coefficient + b.coefficient, a.radicand);
}

bool operator==(const Surd& a, const Surd& b) { return a.sign() == b.sign() && a.square() == b.square(); }

std::string Surd::str() const {
  if (radicand == Rational(1)) {
    return coefficient.str();
  }
  return coefficient.str() + "*sqrt(" + radicand.str() + ")";
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace hml
