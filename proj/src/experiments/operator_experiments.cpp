#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "common.hpp"
#include "hml/discretize/discretize.hpp"
#include "hml/experiments/experiments.hpp"
#include "hml/operators/operators.hpp"

namespace hml {

namespace {

constexpr double kJRelativeTolerance = 1e-2;
constexpr double kSingularFunctionDeviation = 5e-2;
constexpr double kSimilarityThreshold = 0.9;
constexpr double kGramianSlopeLow = -1.4;
constexpr double kGramianSlopeHigh = -1.0;
constexpr double kGramianNormCap = 1.129;
constexpr double kInterlacingTolerance = 1e-12;

// 2/((2i-1) pi), 1-based i.
template <Scalar T>
T j_sigma(std::size_t i, const PrecisionContext& ctx) {
  return make_scalar<T>(2.0, ctx) / (make_scalar<T>(static_cast<double>(2 * i - 1), ctx) * pi_value<T>(ctx));
}

template <Scalar T>
DenseMatrix<T> j_matrix_at(std::size_t n, const PrecisionContext& ctx) {
  return scalarize<T>(j_matrix(GridSpec(n)), ctx);
}

template <Scalar T>
ExperimentReport singular_functions_impl(const SingularFunctionsParams& params, const PrecisionContext& ctx) {
  using std::abs;
  using std::sqrt;
  const std::size_t n = params.n;
  const std::size_t index = params.index;
  if (index < 1 || index > n) throw std::invalid_argument("singular-functions needs 1 <= i <= n");
  ExperimentReport report;
  report.name = "singular-functions";
  report.add_parameter("n", std::to_string(n));
  report.add_parameter("i", std::to_string(index));
  report.add_parameter("scheme", std::string(to_string(params.scheme)));
  report.add_parameter("digits", std::to_string(ctx.digits()));

  const GridSpec grid(n);
  const SingularVectorResult<T> uj = singular_vector(j_matrix_at<T>(n, ctx), index, ctx);
  const SingularVectorResult<T> ua = singular_vector(a_matrix<T>(grid, params.scheme, ctx), index, ctx);
  const SingularTriple<T> analytic = j_singular_triple<T>(static_cast<int>(index), n, ctx);
  for (const auto* r : {&uj, &ua}) {
    if (r->degenerate) {
      report.notices.push_back("sigma_" + std::to_string(index) + " lies in a cluster " +
                               std::to_string(r->cluster_first) + ".." + std::to_string(r->cluster_last) +
                               "; the vector is one element of the cluster basis");
    }
  }

  // Coefficients in the normalized indicator basis are sqrt(h) times the
  // function values.
  const T scale = sqrt(make_scalar<T>(static_cast<double>(n), ctx));
  Table table{"singular_functions", {"t", "u_A", "u_J", "u_J_analytic"}, {}};
  Series series_a{"u_" + std::to_string(index) + "(A_n)", {}, {}};
  Series series_j{"u_" + std::to_string(index) + "(J_n)", {}, {}};
  T deviation = make_scalar<T>(0.0, ctx);
  T similarity_aj = make_scalar<T>(0.0, ctx);
  T similarity_ja = make_scalar<T>(0.0, ctx);
  const T analytic_norm = sqrt(analytic.u.squared_norm());
  for (std::size_t k = 0; k < n; ++k) {
    const T t = GridFunction<T>::midpoint(k, n, ctx);
    const T fa = ua.vector[k] * scale;
    const T fj = uj.vector[k] * scale;
    const T d = abs(fj - analytic.u[k]);
    if (d > deviation) deviation = d;
    similarity_aj += ua.vector[k] * uj.vector[k];
    similarity_ja += uj.vector[k] * analytic.u[k];
    table.add_row({format_value(t, ctx), format_value(fa, ctx), format_value(fj, ctx), format_value(analytic.u[k], ctx)});
    series_a.x.push_back(to_double(t));
    series_a.y.push_back(to_double(fa));
    series_j.x.push_back(to_double(t));
    series_j.y.push_back(to_double(fj));
  }
  similarity_ja /= analytic_norm * scale;
  report.tables.push_back(std::move(table));

  Table sigmas{"j_singular_values", {"i", "sigma_J", "analytic", "relative_error"}, {}};
  const std::size_t sigma_count = std::min<std::size_t>(n, std::max<std::size_t>(index, 10));
  double worst_sigma = 0.0;
  for (std::size_t i = 1; i <= sigma_count; ++i) {
    const T s = uj.spectrum.values[i - 1];
    const T exact = j_sigma<T>(i, ctx);
    const double rel = to_double(T(abs(s - exact) / exact));
    if (i <= 10) worst_sigma = std::max(worst_sigma, rel);
    sigmas.add_row({std::to_string(i), format_value(s, ctx), format_value(exact, ctx), format_double(rel, 4)});
  }
  report.tables.push_back(std::move(sigmas));

  const T floor_j = uj.spectrum.trust_floor;
  detail::add_metric(report, "sigma_i_J", uj.sigma, ctx, std::optional<T>(floor_j));
  detail::add_metric(report, "sigma_i_A", ua.sigma, ctx, std::optional<T>(ua.spectrum.trust_floor));
  detail::add_metric(report, "max_deviation_u_J_vs_analytic", deviation, ctx);
  detail::add_metric(report, "cosine_similarity_u_A_u_J", T(abs(similarity_aj)), ctx);
  detail::add_metric(report, "cosine_similarity_u_J_analytic", T(abs(similarity_ja)), ctx);
  detail::add_plain_metric(report, "max_sigma_J_relative_error_i_le_10", worst_sigma, ctx.digits());

  report.add_check("u_J_matches_analytic", to_double(deviation) <= kSingularFunctionDeviation,
                   "max deviation " + format_value(deviation, ctx) + " vs 5e-2");
  report.add_check("sigma_J_matches_analytic", worst_sigma <= kJRelativeTolerance,
                   "max relative error " + format_double(worst_sigma, 4) + " vs 1e-2 for i <= 10");
  report.add_check("u_A_differs_from_u_J", to_double(abs(similarity_aj)) < kSimilarityThreshold,
                   "|cos| " + format_value(T(abs(similarity_aj)), ctx) + " vs 0.9");
  report.plot = Plot{"Singular functions at index " + std::to_string(index), "t", "u(t)", false,
                     {std::move(series_a), std::move(series_j)}};
  return report;
}

template <Scalar T>
ExperimentReport gramian_decay_impl(const GramianDecayParams& params, const PrecisionContext& ctx) {
  using std::exp;
  const std::size_t n = params.n;
  if (n < 2 || params.i_max < 2 || params.i_max > n) throw std::invalid_argument("gramian-decay needs 2 <= i_max <= n");
  ExperimentReport report;
  report.name = "gramian-decay";
  report.add_parameter("n", std::to_string(n));
  report.add_parameter("i_max", std::to_string(params.i_max));
  report.add_parameter("digits", std::to_string(ctx.digits()));

  const SpectralResult<T> sigma = singular_values(scalarize<T>(legendre_gramian(n), ctx), ctx);
  Table table{"singular_values", {"i", "sigma", "trusted", "reference"}, {}};
  Series computed{"sigma_i(G_n)", {}, {}};
  Series reference{"exp(-1.2 i + 2)", {}, {}};
  for (std::size_t i = 1; i <= params.i_max; ++i) {
    const double ref = std::exp(-1.2 * static_cast<double>(i) + 2.0);
    table.add_row({std::to_string(i), format_value(sigma.values[i - 1], ctx), detail::yes_no(sigma.trusted[i - 1]),
                   format_double(ref, 10)});
    reference.x.push_back(static_cast<double>(i));
    reference.y.push_back(ref);
  }
  computed = detail::spectrum_series("sigma_i(G_n)", sigma.values, params.i_max);
  report.tables.push_back(std::move(table));

  const std::size_t window = std::min(params.i_max, sigma.trusted_prefix());
  detail::add_metric(report, "sigma_1", sigma.values[0], ctx, std::optional<T>(sigma.trust_floor));
  report.add_parameter("fit_window", "1.." + std::to_string(window));
  if (window >= 2) {
    const LogLinearFit exponential = fit_log_linear(sigma.values, 1, window);
    const LogLinearFit power = fit_power_law(sigma.values, 1, window);
    detail::add_plain_metric(report, "fitted_slope", exponential.slope, ctx.digits());
    detail::add_plain_metric(report, "fitted_intercept", exponential.intercept, ctx.digits());
    detail::add_plain_metric(report, "exponential_residual_rms", exponential.residual_rms, ctx.digits());
    detail::add_plain_metric(report, "power_law_residual_rms", power.residual_rms, ctx.digits());
    detail::add_plain_metric(report, "power_law_exponent", power.slope, ctx.digits());
    report.add_check("slope_in_band", exponential.slope >= kGramianSlopeLow && exponential.slope <= kGramianSlopeHigh,
                     "slope " + format_double(exponential.slope, 6) + " vs [-1.4, -1.0]");
    report.add_check("exponential_beats_power_law", exponential.residual_rms < power.residual_rms,
                     "rms " + format_double(exponential.residual_rms, 4) + " vs " +
                         format_double(power.residual_rms, 4));
  } else {
    report.add_check("fit_window_nonempty", false, "fewer than two trusted values");
  }
  report.add_check("sigma_1_below_norm_product", to_double(sigma.values[0]) <= kGramianNormCap,
                   "sigma_1 " + format_value(sigma.values[0], ctx) + " vs 1.129");

  // The Gramian of order n/2 is the leading block, so its singular values
  // cannot exceed those of the full matrix.
  const std::size_t half = n / 2;
  const SpectralResult<T> sub = singular_values(scalarize<T>(legendre_gramian(half), ctx), ctx);
  std::size_t compared = 0;
  std::string worst_where;
  for (std::size_t i = 1; i <= half; ++i) {
    if (!sub.trusted[i - 1] || !sigma.trusted[i - 1]) continue;
    ++compared;
    const bool holds = sub.values[i - 1] <= sigma.values[i - 1] * (1.0 + kInterlacingTolerance);
    report.verdicts.push_back(BoundVerdict{"sigma_i(G_" + std::to_string(half) + ") <= sigma_i(G_" +
                                               std::to_string(n) + ")",
                                           i, holds ? Verdict::kHolds : Verdict::kViolated,
                                           format_value(sub.values[i - 1], ctx), format_value(sigma.values[i - 1], ctx)});
    if (!holds) worst_where += " " + std::to_string(i);
  }
  report.add_check("interlacing_with_half_order", worst_where.empty(),
                   worst_where.empty() ? std::to_string(compared) + " trusted indices"
                                       : "violated at i =" + worst_where);
  report.plot = Plot{"Singular values of the Legendre Gramian", "i", "sigma_i", true,
                     {std::move(computed), std::move(reference)}};
  return report;
}

template <Scalar T>
ExperimentReport discretized_decay_impl(const DiscretizedDecayParams& params, const PrecisionContext& ctx) {
  using std::abs;
  const std::size_t n = params.n;
  if (n < 2) throw std::invalid_argument("discretized-decay needs n >= 2");
  ExperimentReport report;
  report.name = "discretized-decay";
  report.add_parameter("n", std::to_string(n));
  report.add_parameter("i_max", std::to_string(params.i_max));
  report.add_parameter("scheme", std::string(to_string(params.scheme)));
  report.add_parameter("digits", std::to_string(ctx.digits()));

  const GridSpec grid(n);
  const SpectralResult<T> sa = singular_values(a_matrix<T>(grid, params.scheme, ctx), ctx);
  const SpectralResult<T> sb = singular_values(bh_matrix<T>(grid, n, ctx), ctx);
  const SpectralResult<T> sj = singular_values(j_matrix_at<T>(n, ctx), ctx);

  const std::size_t rows = std::min(params.i_max, n);
  Table table{"singular_values", {"i", "sigma_A", "trusted_A", "sigma_B", "trusted_B", "sigma_J", "sigma_J_analytic"}, {}};
  for (std::size_t i = 1; i <= rows; ++i) {
    table.add_row({std::to_string(i), format_value(sa.values[i - 1], ctx), detail::yes_no(sa.trusted[i - 1]),
                   format_value(sb.values[i - 1], ctx), detail::yes_no(sb.trusted[i - 1]),
                   format_value(sj.values[i - 1], ctx), format_value(j_sigma<T>(i, ctx), ctx)});
  }
  report.tables.push_back(std::move(table));

  const std::size_t j_window = std::max<std::size_t>(1, n / 100);
  double worst_j = 0.0;
  for (std::size_t i = 1; i <= j_window; ++i) {
    const T exact = j_sigma<T>(i, ctx);
    worst_j = std::max(worst_j, to_double(T(abs(sj.values[i - 1] - exact) / exact)));
  }
  detail::add_plain_metric(report, "max_sigma_J_relative_error", worst_j, ctx.digits());
  report.add_check("J_matches_analytic", worst_j <= kJRelativeTolerance,
                   "max relative error " + format_double(worst_j, 4) + " for i <= " + std::to_string(j_window));

  const std::size_t window = std::min(rows, sa.trusted_prefix());
  report.add_parameter("fit_window_A", "1.." + std::to_string(window));
  if (window >= 3) {
    const LogLinearFit exponential = fit_log_linear(sa.values, 1, window);
    const LogLinearFit power = fit_power_law(sa.values, 1, window);
    detail::add_plain_metric(report, "A_fitted_slope", exponential.slope, ctx.digits());
    detail::add_plain_metric(report, "A_exponential_residual_rms", exponential.residual_rms, ctx.digits());
    detail::add_plain_metric(report, "A_power_law_residual_rms", power.residual_rms, ctx.digits());
    report.add_check("A_decay_exponential", exponential.slope < 0.0 && exponential.residual_rms < power.residual_rms,
                     "slope " + format_double(exponential.slope, 6) + ", rms " +
                         format_double(exponential.residual_rms, 4) + " vs power law " +
                         format_double(power.residual_rms, 4));
  } else {
    report.add_check("A_fit_window_nonempty", false, "fewer than three trusted values");
  }
  detail::add_metric(report, "sigma_1_A", sa.values[0], ctx, std::optional<T>(sa.trust_floor));
  detail::add_metric(report, "sigma_1_B", sb.values[0], ctx, std::optional<T>(sb.trust_floor));
  detail::add_metric(report, "sigma_1_J", sj.values[0], ctx, std::optional<T>(sj.trust_floor));
  using std::sqrt;
  const T root_pi = sqrt(pi_value<T>(ctx));
  report.add_check("B_norm_below_root_pi", sb.values[0] <= root_pi,
                   "sigma_1(B_n) " + format_value(sb.values[0], ctx) + " vs sqrt(pi)");
  report.add_parameter("trusted_A", std::to_string(sa.trusted_count()));
  report.add_parameter("trusted_B", std::to_string(sb.trusted_count()));
  report.plot = Plot{"Singular values of A_n, B_n and J_n", "i", "sigma_i", true,
                     {detail::spectrum_series("A_n", sa.values, sa.trusted_count()),
                      detail::spectrum_series("B_n", sb.values, sb.trusted_count()),
                      detail::spectrum_series("J_n", sj.values, rows)}};
  return report;
}

template <Scalar T>
ExperimentReport product_bound_impl(const ProductBoundParams& params, const PrecisionContext& ctx) {
  using std::sqrt;
  const std::size_t n = params.n;
  if (n < 2) throw std::invalid_argument("product-bound needs n >= 2");
  ExperimentReport report;
  report.name = "product-bound";
  report.add_parameter("n", std::to_string(n));
  report.add_parameter("digits", std::to_string(ctx.digits()));

  const SpectralResult<T> sa =
      singular_values(a_matrix<T>(GridSpec(n), DiscretizationScheme::kExactGramian, ctx), ctx);
  const SpectralResult<T> sj = singular_values(j_matrix_at<T>(n, ctx), ctx);
  const SpectralResult<T> lambda = hilbert_eigenvalues<T>(n, ctx);

  Table table{"product_bound",
              {"i", "sigma_2i_A", "sigma_L", "sigma_J", "product", "ratio_sigma_i_A", "trusted", "verdict"}, {}};
  Series lhs{"sigma_2i(A_n)", {}, {}};
  Series rhs{"sigma_i(L_n) sigma_i(J_n)", {}, {}};
  for (std::size_t i = 1; 2 * i <= n && i <= lambda.values.size(); ++i) {
    const T sl = sqrt(lambda.values[i - 1]);
    const T product = sl * sj.values[i - 1];
    const T& a2i = sa.values[2 * i - 1];
    const bool trusted = sa.trusted[2 * i - 1] && lambda.trusted[i - 1] && sj.trusted[i - 1];
    const Verdict verdict = detail::verdict_for(trusted, a2i <= product);
    report.verdicts.push_back(BoundVerdict{"sigma_2i(A_n) <= sigma_i(L_n) sigma_i(J_n)", i, verdict,
                                           format_value(a2i, ctx), format_value(product, ctx)});
    // The approximate relation sigma_i(A) ~ sigma_i(L) sigma_i(J) is only
    // tabulated.
    const std::string ratio = sa.trusted[i - 1] && trusted ? format_value(T(sa.values[i - 1] / product), ctx) : "";
    table.add_row({std::to_string(i), format_value(a2i, ctx), format_value(sl, ctx), format_value(sj.values[i - 1], ctx),
                   format_value(product, ctx), ratio, detail::yes_no(trusted), std::string(to_string(verdict))});
    lhs.x.push_back(static_cast<double>(i));
    lhs.y.push_back(to_double(a2i));
    rhs.x.push_back(static_cast<double>(i));
    rhs.y.push_back(to_double(product));
  }
  report.tables.push_back(std::move(table));
  detail::add_metric(report, "sigma_1_A", sa.values[0], ctx, std::optional<T>(sa.trust_floor));
  detail::add_metric(report, "sigma_1_H", lambda.values[0], ctx, std::optional<T>(lambda.trust_floor));
  const std::size_t violated = report.verdict_count(Verdict::kViolated);
  report.add_check("no_violations", violated == 0,
                   std::to_string(report.verdict_count(Verdict::kHolds)) + " holds, " + std::to_string(violated) +
                       " violated, " + std::to_string(report.verdict_count(Verdict::kUntrusted)) + " untrusted");
  report.plot = Plot{"Product bound", "i", "value", true, {std::move(lhs), std::move(rhs)}};
  return report;
}

}  // namespace

ExperimentReport run_singular_functions(const SingularFunctionsParams& params, const PrecisionContext& ctx) {
  return with_scalar(ctx, [&]<Scalar T>() { return singular_functions_impl<T>(params, ctx); });
}

ExperimentReport run_gramian_decay(const GramianDecayParams& params, const PrecisionContext& ctx) {
  return with_scalar(ctx, [&]<Scalar T>() { return gramian_decay_impl<T>(params, ctx); });
}

ExperimentReport run_discretized_decay(const DiscretizedDecayParams& params, const PrecisionContext& ctx) {
  return with_scalar(ctx, [&]<Scalar T>() { return discretized_decay_impl<T>(params, ctx); });
}

ExperimentReport run_product_bound(const ProductBoundParams& params, const PrecisionContext& ctx) {
  return with_scalar(ctx, [&]<Scalar T>() { return product_bound_impl<T>(params, ctx); });
}

}  // namespace hml
