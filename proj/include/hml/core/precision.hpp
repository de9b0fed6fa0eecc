#pragma once

#include <string>

namespace hml {

enum class ArithmeticMode { kHardware, kSoftware };

/// Working precision of a computation, expressed in decimal digits.
///
/// Hardware mode maps to IEEE double (at most 15 digits). Software mode maps
/// to an MPFR big-float whose binary precision carries 16 guard bits on top of
/// the advertised decimal digits.
class PrecisionContext {
 public:
  static constexpr int kHardwareDigits = 15;

  static PrecisionContext hardware(int digits = kHardwareDigits);
  static PrecisionContext software(int digits);
  /// Hardware for digits <= 15, software above.
  static PrecisionContext for_digits(int digits);

  int digits() const { return digits_; }
  ArithmeticMode mode() const { return mode_; }
  bool is_hardware() const { return mode_ == ArithmeticMode::kHardware; }

  /// Binary precision used for software values; 53 in hardware mode.
  long bits() const;

  /// Exponent e of the default tolerance 10^e, i.e. -digits + 10.
  int tolerance_exponent() const { return -digits_ + 10; }
  /// Exponent of the trust floor factor 10^(-digits + 5).
  int trust_exponent() const { return -digits_ + 5; }

  std::string describe() const;

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

 private:
  PrecisionContext(int digits, ArithmeticMode mode);

  int digits_;
  ArithmeticMode mode_;
};

/// Binary precision for a decimal digit count: ceil(digits * 3.33) + 16.
long bits_for_digits(int digits);

}  // namespace hml
