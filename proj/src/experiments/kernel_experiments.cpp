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

constexpr long kSeriesTerms = 2000;
constexpr double kSeriesTolerance = 1e-10;
constexpr double kLogRatioTolerance = 0.25;
constexpr double kDivergenceTermsScale = 40.0;
constexpr double kNormCap = 3.14159265358979323846;

// sum_{j<=J} (1-s^j)(1-t^j)/j^2 plus the Euler-Maclaurin tail of
// sum_{j>J} 1/j^2; the neglected s^j, t^j tail terms are below s^J.
template <Scalar T>
T kernel_series(const T& s, const T& t, const PrecisionContext& ctx) {
  T sum = make_scalar<T>(0.0, ctx);
  if (s == 1.0 || t == 1.0) return sum;
  T sp = make_scalar<T>(1.0, ctx);
  T tp = make_scalar<T>(1.0, ctx);
  for (long j = 1; j <= kSeriesTerms; ++j) {
    sp *= s;
    tp *= t;
    const double jj = static_cast<double>(j);
    sum += (1.0 - sp) * (1.0 - tp) / (jj * jj);
  }
  const double big_j = static_cast<double>(kSeriesTerms);
  sum += make_scalar<T>(1.0, ctx) / big_j - make_scalar<T>(1.0, ctx) / (2.0 * big_j * big_j) +
         make_scalar<T>(1.0, ctx) / (6.0 * big_j * big_j * big_j);
  return sum;
}

template <Scalar T>
ExperimentReport kernel_probe_impl(const KernelProbeParams& params, const PrecisionContext& ctx) {
  using std::abs;
  using std::log;
  if (params.grid < 2) throw std::invalid_argument("kernel-probe needs a grid of at least 2 points per side");
  if (params.epsilons.empty()) throw std::invalid_argument("kernel-probe needs at least one epsilon");
  for (double e : params.epsilons) {
    if (!(e > 0.0 && e < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  ExperimentReport report;
  report.name = "kernel-probe";
  report.add_parameter("grid", std::to_string(params.grid));
  std::string ladder;
  for (double e : params.epsilons) ladder += (ladder.empty() ? "" : " ") + format_double(e, 3);
  report.add_parameter("epsilons", ladder);
  report.add_parameter("digits", std::to_string(ctx.digits()));

  const std::size_t m = params.grid;
  std::vector<T> nodes;
  for (std::size_t k = 0; k < m; ++k) {
    nodes.push_back(to_scalar<T>(Rational(static_cast<long>(k), static_cast<long>(m - 1)), ctx));
  }
  Table grid{"kernel_grid", {"s", "t", "k_closed_form", "k_series", "abs_difference"}, {}};
  T worst_series = make_scalar<T>(0.0, ctx);
  T worst_symmetry = make_scalar<T>(0.0, ctx);
  T worst_edge = make_scalar<T>(0.0, ctx);
  bool finite = true;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const T k = kernel_k(nodes[a], nodes[b], ctx);
      const T series = kernel_series(nodes[a], nodes[b], ctx);
      const T diff = abs(k - series);
      using std::isfinite;
      finite = finite && isfinite(k);
      worst_series = std::max(worst_series, diff);
      worst_symmetry = std::max(worst_symmetry, T(abs(k - kernel_k(nodes[b], nodes[a], ctx))));
      if (a == m - 1 || b == m - 1) worst_edge = std::max(worst_edge, T(abs(k)));
      grid.add_row({format_value(nodes[a], ctx), format_value(nodes[b], ctx), format_value(k, ctx),
                    format_value(series, ctx), format_value(diff, ctx)});
    }
  }
  report.tables.push_back(std::move(grid));
  detail::add_metric(report, "max_series_difference", worst_series, ctx);
  detail::add_metric(report, "max_symmetry_defect", worst_symmetry, ctx);
  detail::add_metric(report, "max_edge_value", worst_edge, ctx);
  report.add_check("closed_form_matches_series", finite && to_double(worst_series) <= kSeriesTolerance,
                   "max difference " + format_value(worst_series, ctx) + " vs 1e-10");
  report.add_check("symmetric", worst_symmetry == 0.0, "max |k(s,t) - k(t,s)| " + format_value(worst_symmetry, ctx));
  report.add_check("zero_on_edges", worst_edge == 0.0, "max |k| on s = 1 or t = 1 " + format_value(worst_edge, ctx));

  // (k(1,0) - k(1-eps,0))/eps against the derivative ln(1-s)/s, which the
  // partial sums of the differentiated series approach.
  std::vector<double> epsilons = params.epsilons;
  std::sort(epsilons.begin(), epsilons.end(), std::greater<>());
  Table quotients{"difference_quotients", {"epsilon", "difference_quotient", "partial_sum_terms", "partial_sum", "log_oracle"}, {}};
  Series series_q{"difference quotient at t = 0", {}, {}};
  const T zero = make_scalar<T>(0.0, ctx);
  const T edge = kernel_k(make_scalar<T>(1.0, ctx), zero, ctx);
  std::vector<double> magnitudes;
  for (double e : epsilons) {
    const T eps = make_scalar<T>(e, ctx);
    const T s = 1.0 - eps;
    const T q = (edge - kernel_k(s, zero, ctx)) / eps;
    const long terms = static_cast<long>(std::ceil(kDivergenceTermsScale / e));
    const T partial = kernel_ds_partial_sum(s, zero, terms, ctx);
    const T oracle = log(T(1.0 - s)) / s;
    quotients.add_row({format_double(e, 4), format_value(q, ctx), std::to_string(terms), format_value(partial, ctx),
                       format_value(oracle, ctx)});
    magnitudes.push_back(std::abs(to_double(q)));
    series_q.x.push_back(e);
    series_q.y.push_back(std::abs(to_double(q)));
  }
  report.tables.push_back(std::move(quotients));
  bool growing = true;
  for (std::size_t k = 1; k < magnitudes.size(); ++k) growing = growing && magnitudes[k] > magnitudes[k - 1];
  report.add_check("difference_quotients_grow", growing, std::to_string(magnitudes.size()) + " ladder steps");

  // Logarithmic divergence: |q(eps)| / |q(100 eps)| ~ ln(eps) / ln(100 eps).
  const double smallest = epsilons.back();
  const auto partner = std::find_if(epsilons.begin(), epsilons.end(),
                                    [&](double e) { return std::abs(e / smallest - 100.0) < 1e-6 * 100.0; });
  if (partner != epsilons.end()) {
    const double observed = magnitudes.back() / magnitudes[static_cast<std::size_t>(partner - epsilons.begin())];
    const double expected = std::log(smallest) / std::log(*partner);
    detail::add_plain_metric(report, "quotient_ratio", observed, ctx.digits());
    detail::add_plain_metric(report, "log_ratio", expected, ctx.digits());
    report.add_check("log_consistent_ratio", std::abs(observed / expected - 1.0) <= kLogRatioTolerance,
                     "ratio " + format_double(observed, 6) + " vs " + format_double(expected, 6) + " within 25%");
  }
  report.plot = Plot{"Difference quotients of k at s -> 1, t = 0", "epsilon", "|quotient|", true, {std::move(series_q)}};
  return report;
}

template <Scalar T>
ExperimentReport norm_difference_impl(const NormDifferenceParams& params, const PrecisionContext& ctx) {
  if (params.n_list.empty()) throw std::invalid_argument("norm-diff needs at least one n");
  for (std::size_t n : params.n_list) {
    if (n < params.base) throw std::invalid_argument("norm-diff needs every n >= base");
  }
  ExperimentReport report;
  report.name = "norm-diff";
  report.add_parameter("base", std::to_string(params.base));
  std::string list;
  for (std::size_t n : params.n_list) list += (list.empty() ? "" : " ") + std::to_string(n);
  report.add_parameter("n_list", list);
  report.add_parameter("digits", std::to_string(ctx.digits()));

  const T tol = default_tolerance<T>(ctx);
  Table table{"norm_difference", {"n", "spectral_norm", "frobenius_norm", "iterations", "converged"}, {}};
  Series curve{"||H_n - H_base||", {}, {}};
  std::vector<double> values;
  bool all_converged = true;
  for (std::size_t n : params.n_list) {
    const PaddedHilbertDifference<T> op(n, params.base, ctx);
    const PowerIterationResult<T> top = top_singular_pair(op, ctx, tol);
    const T frob = padded_difference_frobenius<T>(n, params.base, ctx);
    if (!top.converged) {
      all_converged = false;
      report.notices.push_back("power iteration did not converge at n = " + std::to_string(n) +
                               " (last relative change " + format_double(top.last_relative_change, 3) + ")");
    }
    table.add_row({std::to_string(n), format_value(top.sigma, ctx), format_value(frob, ctx),
                   std::to_string(top.iterations), detail::yes_no(top.converged)});
    values.push_back(to_double(top.sigma));
    curve.x.push_back(static_cast<double>(n));
    curve.y.push_back(to_double(top.sigma));
  }
  report.tables.push_back(std::move(table));
  detail::add_plain_metric(report, "value_at_largest_n", values.back(), ctx.digits());
  bool increasing = true;
  bool below_pi = true;
  for (std::size_t k = 0; k < values.size(); ++k) {
    below_pi = below_pi && values[k] < kNormCap;
    if (k > 0) increasing = increasing && values[k] > values[k - 1];
  }
  report.add_check("power_iteration_converged", all_converged, std::to_string(values.size()) + " sizes");
  report.add_check("strictly_increasing", increasing, "over n = " + list);
  report.add_check("below_pi", below_pi, "largest " + format_double(*std::max_element(values.begin(), values.end()), 8));
  if (params.expected_at_largest) {
    const double target = *params.expected_at_largest;
    report.add_check("matches_expected_at_largest", std::abs(values.back() - target) <= params.expected_tolerance,
                     format_double(values.back(), 8) + " vs " + format_double(target, 4) + " +- " +
                         format_double(params.expected_tolerance, 3));
  }
  report.plot = Plot{"Norm of the padded Hilbert difference", "n", "spectral norm", false, {std::move(curve)}};
  return report;
}

}  // namespace

ExperimentReport run_kernel_probe(const KernelProbeParams& params, const PrecisionContext& ctx) {
  return with_scalar(ctx, [&]<Scalar T>() { return kernel_probe_impl<T>(params, ctx); });
}

ExperimentReport run_norm_difference(const NormDifferenceParams& params, const PrecisionContext& ctx) {
  return with_scalar(ctx, [&]<Scalar T>() { return norm_difference_impl<T>(params, ctx); });
}

const std::vector<std::string_view>& experiment_names() {
  static const std::vector<std::string_view> names{"table1",          "singular-functions", "gramian-decay",
                                                   "discretized-decay", "norm-diff",         "beckermann",
                                                   "hilbert-asymptotics", "kernel-probe",    "product-bound"};
  return names;
}

int default_digits(std::string_view experiment) {
  if (experiment == "gramian-decay") return 30;
  if (experiment == "beckermann") return 150;
  if (experiment == "hilbert-asymptotics") return 200;
  if (experiment == "product-bound") return 100;
  for (std::string_view name : experiment_names()) {
    if (name == experiment) return 15;
  }
  throw std::invalid_argument("unknown experiment: " + std::string(experiment));
}

}  // namespace hml
