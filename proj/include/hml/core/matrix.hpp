#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hml/core/scalar.hpp"

namespace hml {

/// Row-major dense matrix with a provenance label ("H_n", "G_n^A", ...).
///
/// E is a working scalar (double, BigFloat) or an exact entry type
/// (Rational, Surd). Indices are zero-based.
template <class E>
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols, E fill, std::string label = {})
      : rows_(rows), cols_(cols), entries_(rows * cols, fill), label_(std::move(label)) {
    check_shape();
  }

  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<E> entries, std::string label = {})
      : rows_(rows), cols_(cols), entries_(std::move(entries)), label_(std::move(label)) {
    check_shape();
    if (entries_.size() != rows_ * cols_) {
      throw std::invalid_argument("entry count does not match " + std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    if constexpr (Scalar<E>) {
      using std::isfinite;
      for (const auto& e : entries_) {
        if (!isfinite(e)) throw std::invalid_argument("non-finite matrix entry in " + label_);
      }
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  E& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const E& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<E> row(std::size_t i) { return {entries_.data() + i * cols_, cols_}; }
  std::span<const E> row(std::size_t i) const { return {entries_.data() + i * cols_, cols_}; }
  std::span<const E> entries() const { return entries_; }
  std::vector<E>& storage() { return entries_; }

 private:
  void check_shape() const {
    if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("matrix dimensions must be positive");
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<E> entries_;
  std::string label_;
};

template <class E>
DenseMatrix<E> transpose(const DenseMatrix<E>& m) {
  std::vector<E> entries;
  entries.reserve(m.rows() * m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) entries.push_back(m(i, j));
  }
  return DenseMatrix<E>(m.cols(), m.rows(), std::move(entries), m.label() + "^T");
}

template <Scalar T>
DenseMatrix<T> identity(std::size_t n, const PrecisionContext& ctx) {
  DenseMatrix<T> m(n, n, make_scalar<T>(0.0, ctx), "I_" + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = make_scalar<T>(1.0, ctx);
  return m;
}

/// Rounds every exact entry once to the working precision.
template <Scalar T, class Exact>
DenseMatrix<T> scalarize(const DenseMatrix<Exact>& m, const PrecisionContext& ctx) {
  std::vector<T> entries;
  entries.reserve(m.rows() * m.cols());
  for (const auto& e : m.entries()) entries.push_back(to_scalar<T>(e, ctx));
  return DenseMatrix<T>(m.rows(), m.cols(), std::move(entries), m.label());
}

/// a * b with each entry an exactly accumulated dot product rounded once.
template <Scalar T>
DenseMatrix<T> matmul(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul dimension mismatch: " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " times " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
  }
  if constexpr (std::same_as<T, BigFloat>) {
    if (a(0, 0).precision() != b(0, 0).precision()) {
      throw std::invalid_argument("matmul operands carry different precisions");
    }
  }
  const DenseMatrix<T> bt = transpose(b);
  std::vector<T> entries;
  entries.reserve(a.rows() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if constexpr (std::same_as<T, double>) {
        entries.push_back(kernels::accurate_dot(a.row(i), bt.row(j)));
      } else {
        entries.push_back(kernels::accurate_dot(a.row(i), bt.row(j), a(0, 0).precision()));
      }
    }
  }
  return DenseMatrix<T>(a.rows(), b.cols(), std::move(entries), a.label() + "*" + b.label());
}

/// Exact product for rational matrices.
DenseMatrix<Rational> matmul(const DenseMatrix<Rational>& a, const DenseMatrix<Rational>& b);

template <Scalar T>
T frobenius(const DenseMatrix<T>& m) {
  T sum = m(0, 0) * 0.0;
  for (const auto& e : m.entries()) sum += e * e;
  using std::sqrt;
  return sqrt(sum);
}

/// Exact squared Frobenius norm.
Rational frobenius_squared(const DenseMatrix<Rational>& m);

template <Scalar T>
T max_abs_difference(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
  using std::abs;
  T best = a(0, 0) * 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    T d = abs(a.entries()[k] - b.entries()[k]);
    if (d > best) best = d;
  }
  return best;
}

template <Scalar T>
DenseMatrix<T> subtract(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
  std::vector<T> entries;
  entries.reserve(a.entries().size());
  for (std::size_t k = 0; k < a.entries().size(); ++k) entries.push_back(a.entries()[k] - b.entries()[k]);
  return DenseMatrix<T>(a.rows(), a.cols(), std::move(entries), a.label() + "-" + b.label());
}

}  // namespace hml
