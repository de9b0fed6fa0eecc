#include "hml/core/precision.hpp"

#include <cmath>
#include <stdexcept>

namespace hml {

long bits_for_digits(int digits) {
  // 3.33 is written as 333/100 so the ceiling is exact.
  const long scaled = static_cast<long>(digits) * 333;
  return (scaled + 99) / 100 + 16;
}

PrecisionContext::PrecisionContext(int digits, ArithmeticMode mode) : digits_(digits), mode_(mode) {}

PrecisionContext PrecisionContext::hardware(int digits) {
  if (digits < 1 || digits > kHardwareDigits) {
    throw std::invalid_argument("hardware precision supports 1..15 digits, got " + std::to_string(digits));
  }
  return PrecisionContext(digits, ArithmeticMode::kHardware);
}

PrecisionContext PrecisionContext::software(int digits) {
  if (digits <= kHardwareDigits) {
    throw std::invalid_argument("software precision requires at least 16 digits, got " + std::to_string(digits));
  }
  return PrecisionContext(digits, ArithmeticMode::kSoftware);
}

PrecisionContext PrecisionContext::for_digits(int digits) {
  return digits <= kHardwareDigits ? hardware(digits) : software(digits);
}

long PrecisionContext::bits() const { return is_hardware() ? 53 : bits_for_digits(digits_); }

std::string PrecisionContext::describe() const {
  if (is_hardware()) {
    return std::to_string(digits_) + " digits (hardware double)";
  }
  return std::to_string(digits_) + " digits (software, " + std::to_string(bits()) + " bits)";
}

}  // namespace hml
