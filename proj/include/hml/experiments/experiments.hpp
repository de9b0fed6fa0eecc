#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "hml/discretize/discretize.hpp"
#include "hml/experiments/fit.hpp"
#include "hml/experiments/report.hpp"

namespace hml {

/// phi(n)^(i-1) on the reference grid n in {1e2, 1e3, 1e4, 1e6, 1e9},
/// i in {2, 4, 10, 51}, against the published four-digit values.
ExperimentReport run_table1(const PrecisionContext& ctx);

struct SingularFunctionsParams {
  std::size_t n = 1000;
  std::size_t index = 10;
  DiscretizationScheme scheme = DiscretizationScheme::kExactGramian;
};
/// Domain-side singular vectors u_i of A_n and J_n sampled at midpoints.
ExperimentReport run_singular_functions(const SingularFunctionsParams& params, const PrecisionContext& ctx);

struct GramianDecayParams {
  std::size_t n = 100;
  std::size_t i_max = 20;
};
/// Singular values of the Legendre-basis Gramian with a log-linear fit.
ExperimentReport run_gramian_decay(const GramianDecayParams& params, const PrecisionContext& ctx);

struct DiscretizedDecayParams {
  std::size_t n = 2000;
  std::size_t i_max = 60;
  DiscretizationScheme scheme = DiscretizationScheme::kExactGramian;
};
/// Singular values of A_n, B_n and J_n on the indicator grid.
ExperimentReport run_discretized_decay(const DiscretizedDecayParams& params, const PrecisionContext& ctx);

struct NormDifferenceParams {
  std::size_t base = 100;
  std::vector<std::size_t> n_list{1000, 2000, 4000};
  /// Target value and tolerance checked at the largest n, if set.
  std::optional<double> expected_at_largest;
  double expected_tolerance = 0.05;
};
/// Spectral norm of H_n - H_base (zero-padded) by power iteration.
ExperimentReport run_norm_difference(const NormDifferenceParams& params, const PrecisionContext& ctx);

struct BeckermannParams {
  std::size_t n = 100;
  std::size_t i_max = 40;
};
/// sigma_i(L_n) <= 2 phi(n)^(i-1) sqrt(sigma_1(H_n)) per index.
ExperimentReport run_beckermann(const BeckermannParams& params, const PrecisionContext& ctx);

struct HilbertAsymptoticsParams {
  std::size_t n_min = 5;
  std::size_t n_max = 40;
};
/// ln sigma_n(H_n) / n over a range of n.
ExperimentReport run_hilbert_asymptotics(const HilbertAsymptoticsParams& params, const PrecisionContext& ctx);

struct KernelProbeParams {
  std::size_t grid = 21;
  std::vector<double> epsilons{1e-1, 1e-2, 1e-3, 1e-4};
};
/// Closed-form kernel against its series, symmetry, boundary zeros and the
/// logarithmic blow-up of the s-derivative at s = 1.
ExperimentReport run_kernel_probe(const KernelProbeParams& params, const PrecisionContext& ctx);

struct ProductBoundParams {
  std::size_t n = 50;
};
/// sigma_2i(A_n) <= sigma_i(L_n) sigma_i(J_n) per index.
ExperimentReport run_product_bound(const ProductBoundParams& params, const PrecisionContext& ctx);

/// Command names in run order.
const std::vector<std::string_view>& experiment_names();

/// Working precision each experiment uses unless overridden.
int default_digits(std::string_view experiment);

}  // namespace hml
