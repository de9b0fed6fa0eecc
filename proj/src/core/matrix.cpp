#include "hml/core/matrix.hpp"

namespace hml {

DenseMatrix<Rational> matmul(const DenseMatrix<Rational>& a, const DenseMatrix<Rational>& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul dimension mismatch");
  }
  std::vector<Rational> entries;
  entries.reserve(a.rows() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      mpq_class sum;
      for (std::size_t k = 0; k < a.cols(); ++k) sum += a(i, k).raw() * b(k, j).raw();
      entries.emplace_back(std::move(sum));
    }
  }
  return DenseMatrix<Rational>(a.rows(), b.cols(), std::move(entries), a.label() + "*" + b.label());
}

Rational frobenius_squared(const DenseMatrix<Rational>& m) {
  mpq_class sum;
  for (const auto& e : m.entries()) sum += e.raw() * e.raw();
  return Rational(std::move(sum));
}

}  // namespace hml
