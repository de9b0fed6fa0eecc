#include <vector>

#include "hml/core/scalar.hpp"

namespace hml::kernels {

void dot(std::span<const BigFloat> a, std::span<const BigFloat> b, BigFloat& out) {
  mpfr_set_zero(out.get(), 1);
  for (std::size_t k = 0; k < a.size(); ++k) {
    mpfr_fma(out.get(), a[k].get(), b[k].get(), out.get(), MPFR_RNDN);
  }
}

double accurate_dot(std::span<const double> a, std::span<const double> b) {
  // Exact products of doubles fit in 106 bits; summing them with MPFR's
  // correctly rounded sum gives the exact dot product rounded once.
  std::vector<BigFloat> products;
  products.reserve(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    BigFloat p(a[k], 106);
    p *= b[k];
    products.push_back(std::move(p));
  }
  if (products.empty()) return 0.0;
  std::vector<mpfr_ptr> ptrs;
  ptrs.reserve(products.size());
  for (auto& p : products) ptrs.push_back(p.get());
  BigFloat sum(53);
  mpfr_sum(sum.get(), ptrs.data(), ptrs.size(), MPFR_RNDN);
  return sum.to_double();
}

BigFloat accurate_dot(std::span<const BigFloat> a, std::span<const BigFloat> b, long bits) {
  BigFloat out(bits);
  if (a.empty()) return out;
  std::vector<mpfr_ptr> xs;
  std::vector<mpfr_ptr> ys;
  xs.reserve(a.size());
  ys.reserve(b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    xs.push_back(const_cast<mpfr_ptr>(a[k].get()));
    ys.push_back(const_cast<mpfr_ptr>(b[k].get()));
  }
  mpfr_dot(out.get(), xs.data(), ys.data(), a.size(), MPFR_RNDN);
  return out;
}

void rotate(std::span<BigFloat> x, std::span<BigFloat> y, const BigFloat& c, const BigFloat& s) {
  if (x.empty()) return;
  BigFloat t(x[0].precision());
  for (std::size_t k = 0; k < x.size(); ++k) {
    mpfr_fmms(t.get(), c.get(), x[k].get(), s.get(), y[k].get(), MPFR_RNDN);
    mpfr_fmma(y[k].get(), s.get(), x[k].get(), c.get(), y[k].get(), MPFR_RNDN);
    mpfr_swap(x[k].get(), t.get());
  }
}

void axpy_minus(std::span<BigFloat> y, const BigFloat& alpha, std::span<const BigFloat> x) {
  if (y.empty()) return;
  BigFloat t(y[0].precision());
  for (std::size_t k = 0; k < y.size(); ++k) {
    mpfr_mul(t.get(), alpha.get(), x[k].get(), MPFR_RNDN);
    mpfr_sub(y[k].get(), y[k].get(), t.get(), MPFR_RNDN);
  }
}

}  // namespace hml::kernels
