#include "hml/core/bigfloat.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "hml/core/rational.hpp"

namespace hml {

namespace {

mpfr_prec_t wider(const BigFloat& a, const BigFloat& b) {
  return static_cast<mpfr_prec_t>(std::max(a.precision(), b.precision()));
}

}  // namespace

BigFloat::BigFloat(long bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double value, long bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
  mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& value, long bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
  mpfr_set_q(value_, value.raw().get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const std::string& text, long bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(bits));
  if (mpfr_set_str(value_, text.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(value_);
    throw std::invalid_argument("not a decimal number: " + text);
  }
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    if (mpfr_get_prec(value_) != mpfr_get_prec(other.value_)) {
      mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    }
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

std::string BigFloat::to_string(int significant_digits) const {
  if (!is_finite()) {
    return mpfr_nan_p(value_) ? "nan" : (sign() < 0 ? "-inf" : "inf");
  }
  const int digits = std::max(1, significant_digits);
  const int size = mpfr_snprintf(nullptr, 0, "%.*Re", digits - 1, value_);
  std::vector<char> buffer(static_cast<size_t>(size) + 1);
  mpfr_snprintf(buffer.data(), buffer.size(), "%.*Re", digits - 1, value_);
  return std::string(buffer.data(), static_cast<size_t>(size));
}

#define HML_BIGFLOAT_COMPOUND(op, fn)                         \
  BigFloat& BigFloat::operator op(const BigFloat& other) {    \
    if (other.precision() > precision()) {                    \
      mpfr_prec_round(value_, other.precision(), MPFR_RNDN);  \
    }                                                         \
    fn(value_, value_, other.value_, MPFR_RNDN);              \
    return *this;                                             \
  }

HML_BIGFLOAT_COMPOUND(+=, mpfr_add)
HML_BIGFLOAT_COMPOUND(-=, mpfr_sub)
HML_BIGFLOAT_COMPOUND(*=, mpfr_mul)
HML_BIGFLOAT_COMPOUND(/=, mpfr_div)
#undef HML_BIGFLOAT_COMPOUND

BigFloat& BigFloat::operator+=(double other) {
  mpfr_add_d(value_, value_, other, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator-=(double other) {
  mpfr_sub_d(value_, value_, other, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator*=(double other) {
  mpfr_mul_d(value_, value_, other, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator/=(double other) {
  mpfr_div_d(value_, value_, other, MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(*this);
  mpfr_neg(r.value_, r.value_, MPFR_RNDN);
  return r;
}

#define HML_BIGFLOAT_BINARY(op, fn)                           \
  BigFloat operator op(const BigFloat& a, const BigFloat& b) { \
    BigFloat r(wider(a, b));                                  \
    fn(r.value_, a.value_, b.value_, MPFR_RNDN);              \
    return r;                                                 \
  }

HML_BIGFLOAT_BINARY(+, mpfr_add)
HML_BIGFLOAT_BINARY(-, mpfr_sub)
HML_BIGFLOAT_BINARY(*, mpfr_mul)
HML_BIGFLOAT_BINARY(/, mpfr_div)
#undef HML_BIGFLOAT_BINARY

BigFloat operator-(double a, const BigFloat& b) {
  BigFloat r(b.precision());
  mpfr_d_sub(r.value_, a, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator/(double a, const BigFloat& b) {
  BigFloat r(b.precision());
  mpfr_d_div(r.value_, a, b.value_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::partial_ordering operator<=>(const BigFloat& a, double b) {
  if (mpfr_nan_p(a.value_) || b != b) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_d(a.value_, b);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

#define HML_BIGFLOAT_UNARY(name, fn)        \
  BigFloat name(const BigFloat& x) {        \
    BigFloat r(x.precision());              \
    fn(r.get(), x.get(), MPFR_RNDN);        \
    return r;                               \
  }

HML_BIGFLOAT_UNARY(sqrt, mpfr_sqrt)
HML_BIGFLOAT_UNARY(abs, mpfr_abs)
HML_BIGFLOAT_UNARY(exp, mpfr_exp)
HML_BIGFLOAT_UNARY(log, mpfr_log)
HML_BIGFLOAT_UNARY(log1p, mpfr_log1p)
HML_BIGFLOAT_UNARY(cos, mpfr_cos)
HML_BIGFLOAT_UNARY(sin, mpfr_sin)
#undef HML_BIGFLOAT_UNARY

BigFloat pow(const BigFloat& base, const BigFloat& exponent) {
  BigFloat r(std::max(base.precision(), exponent.precision()));
  mpfr_pow(r.get(), base.get(), exponent.get(), MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& base, long exponent) {
  BigFloat r(base.precision());
  mpfr_pow_si(r.get(), base.get(), exponent, MPFR_RNDN);
  return r;
}

BigFloat hypot(const BigFloat& a, const BigFloat& b) {
  BigFloat r(std::max(a.precision(), b.precision()));
  mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

BigFloat fma(const BigFloat& a, const BigFloat& b, const BigFloat& c) {
  BigFloat r(std::max({a.precision(), b.precision(), c.precision()}));
  mpfr_fma(r.get(), a.get(), b.get(), c.get(), MPFR_RNDN);
  return r;
}

bool isfinite(const BigFloat& x) { return x.is_finite(); }

double to_double(const BigFloat& x) { return x.to_double(); }

BigFloat big_pi(long bits) {
  BigFloat r(bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

}  // namespace hml
