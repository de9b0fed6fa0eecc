#pragma once

#include <mpfr.h>

#include <compare>
#include <ostream>
#include <string>

namespace hml {

class Rational;

/// RAII owner of an mpfr_t.
///
/// Every value carries its own binary precision. Binary operations round to
/// the larger precision of their operands; assignment copies precision along
/// with the value. All rounding is to nearest.
class BigFloat {
 public:
  explicit BigFloat(long bits = 64);
  BigFloat(double value, long bits);
  BigFloat(const Rational& value, long bits);
  /// Parses a decimal string.
  BigFloat(const std::string& text, long bits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }
  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Scientific notation with the given number of significant digits.
  std::string to_string(int significant_digits) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  BigFloat& operator+=(const BigFloat& other);
  BigFloat& operator-=(const BigFloat& other);
  BigFloat& operator*=(const BigFloat& other);
  BigFloat& operator/=(const BigFloat& other);
  BigFloat& operator+=(double other);
  BigFloat& operator-=(double other);
  BigFloat& operator*=(double other);
  BigFloat& operator/=(double other);

  BigFloat operator-() const;

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator+(BigFloat a, double b) { return a += b; }
  friend BigFloat operator-(BigFloat a, double b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, double b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, double b) { return a /= b; }
  friend BigFloat operator+(double a, BigFloat b) { return b += a; }
  friend BigFloat operator-(double a, const BigFloat& b);
  friend BigFloat operator*(double a, BigFloat b) { return b *= a; }
  friend BigFloat operator/(double a, const BigFloat& b);

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);
  friend bool operator==(const BigFloat& a, double b) { return mpfr_cmp_d(a.value_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, double b);

  friend std::ostream& operator<<(std::ostream& os, const BigFloat& x) { return os << x.to_string(20); }

 private:
  mpfr_t value_;
};

BigFloat sqrt(const BigFloat& x);
BigFloat abs(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat log1p(const BigFloat& x);
BigFloat cos(const BigFloat& x);
BigFloat sin(const BigFloat& x);
BigFloat pow(const BigFloat& base, const BigFloat& exponent);
BigFloat pow(const BigFloat& base, long exponent);
BigFloat hypot(const BigFloat& a, const BigFloat& b);
/// a*b + c with a single rounding.
BigFloat fma(const BigFloat& a, const BigFloat& b, const BigFloat& c);
bool isfinite(const BigFloat& x);
double to_double(const BigFloat& x);

BigFloat big_pi(long bits);

}  // namespace hml
