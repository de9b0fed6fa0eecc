#pragma once

#include <gmpxx.h>

#include <vector>

#include "hml/core/rational.hpp"
#include "hml/core/scalar.hpp"

namespace hml {

/// Normalized shifted Legendre polynomial on [0,1]:
///
///   L_j(t) = sqrt(2j-1)/(j-1)! (d/dt)^(j-1) [t^(j-1) (1-t)^(j-1)],  j >= 1.
///
/// Stored as exact integer monomial coefficients c[0..j-1] plus the
/// normalization sqrt(2j-1), kept as a Surd. With this sign convention
/// L_j(0) = sqrt(2j-1) > 0.
class LegendrePolynomial {
 public:
  explicit LegendrePolynomial(int index);

  int index() const { return index_; }
  int degree() const { return index_ - 1; }
  const std::vector<mpz_class>& coefficients() const { return coefficients_; }
  Surd normalization() const { return Surd(Rational(1), Rational(2L * index_ - 1)); }

  /// Exact integral of the unnormalized polynomial against t^power on [0,1]:
  /// sum_k c[k] / (k + power + 1).
  Rational unnormalized_moment(int power) const;

  /// Value at t in [0,1] by Horner's rule, normalization included.
  template <Scalar T>
  T evaluate(const T& t, const PrecisionContext& ctx) const {
    T acc = make_scalar<T>(0.0, ctx);
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
      acc = acc * t + to_scalar<T>(Rational(*it), ctx);
    }
    return acc * to_scalar<T>(normalization(), ctx);
  }

 private:
  int index_;
  std::vector<mpz_class> coefficients_;
};

LegendrePolynomial legendre(int j);

/// <L_i, t^j> on [0,1], exact: sqrt(2i-1) * sum_k c[k]/(k+j+1).
Surd legendre_dot_monomial(int i, int j);

/// Exact <L_i, L_j> on [0,1].
Surd legendre_inner_product(int i, int j);

}  // namespace hml
