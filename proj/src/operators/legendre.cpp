#include "hml/operators/legendre.hpp"

#include <stdexcept>
#include <string>

namespace hml {

LegendrePolynomial::LegendrePolynomial(int index) : index_(index) {
  if (index < 1) {
    throw std::invalid_argument("Legendre index must be >= 1, got " + std::to_string(index));
  }
  const unsigned long m = static_cast<unsigned long>(index - 1);
  // t^m (1-t)^m = sum_q (-1)^q C(m,q) t^(m+q). Differentiating m times maps
  // t^(m+q) to (m+q)!/q! t^q; dividing by m! leaves C(m+q, q). Both binomials
  // are advanced by their integer recurrences.
  coefficients_.reserve(m + 1);
  mpz_class binom_m_q = 1;   // C(m, q)
  mpz_class binom_mq_q = 1;  // C(m+q, q)
  for (unsigned long q = 0; q <= m; ++q) {
    mpz_class c = binom_m_q * binom_mq_q;
    if (q % 2 == 1) c = -c;
    coefficients_.push_back(c);
    binom_m_q = binom_m_q * (m - q) / (q + 1);
    binom_mq_q = binom_mq_q * (m + q + 1) / (q + 1);
  }
}

Rational LegendrePolynomial::unnormalized_moment(int power) const {
  if (power < 0) throw std::invalid_argument("negative monomial power");
  // Common denominator lcm(power+1, ..., power+j) keeps the sum in integers.
  mpz_class lcm = 1;
  for (int k = 0; k < index_; ++k) {
    mpz_lcm_ui(lcm.get_mpz_t(), lcm.get_mpz_t(), static_cast<unsigned long>(k + power + 1));
  }
  mpz_class numerator = 0;
  for (int k = 0; k < index_; ++k) {
    numerator += coefficients_[static_cast<std::size_t>(k)] * (lcm / (k + power + 1));
  }
  return Rational(numerator, lcm);
}

LegendrePolynomial legendre(int j) { return LegendrePolynomial(j); }

Surd legendre_dot_monomial(int i, int j) {
  const LegendrePolynomial p(i);
  return Surd(p.unnormalized_moment(j), Rational(2L * i - 1));
}

Surd legendre_inner_product(int i, int j) {
  const LegendrePolynomial pi(i);
  const LegendrePolynomial pj(j);
  mpq_class sum;
  for (std::size_t k = 0; k < pi.coefficients().size(); ++k) {
    sum += mpq_class(pi.coefficients()[k]) * pj.unnormalized_moment(static_cast<int>(k)).raw();
  }
  return Surd(Rational(std::move(sum)), Rational((2L * i - 1) * (2L * j - 1)));
}

}  // namespace hml
