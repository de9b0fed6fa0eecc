#include <array>
#include <cmath>
#include <cstdlib>
#include <string>

#include "common.hpp"
#include "hml/discretize/discretize.hpp"
#include "hml/experiments/experiments.hpp"
#include "hml/operators/operators.hpp"

namespace hml {

namespace {

struct ReferenceRow {
  long n;
  std::array<const char*, 4> values;  // i = 2, 4, 10, 51
};

constexpr std::array<int, 4> kTableIndices{2, 4, 10, 51};

// Published four-decimal values of phi(n)^(i-1).
constexpr std::array<ReferenceRow, 5> kReferenceMultipliers{{
    {100L, {"0.4777", "0.1091", "0.0013", "9.1932e-17"}},
    {1000L, {"0.5774", "0.1926", "0.0071", "1.1920e-12"}},
    {10000L, {"0.6459", "0.2695", "0.0196", "3.2240e-10"}},
    {1000000L, {"0.7331", "0.3940", "0.0612", "1.8129e-7"}},
    {1000000000L, {"0.8054", "0.5224", "0.1426", "1.9982e-5"}},
}};

constexpr double kTableRelativeTolerance = 1e-3;

// Significant digits shown in a decimal literal such as "0.0013" (2) or
// "9.1932e-17" (5).
int shown_significant_digits(const std::string& text) {
  int count = 0;
  bool leading = true;
  for (char c : text) {
    if (c == 'e' || c == 'E') break;
    if (c < '0' || c > '9') continue;
    if (leading && c == '0') continue;
    leading = false;
    ++count;
  }
  return count;
}

double round_to_significant(double x, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*e", digits - 1, x);
  return std::strtod(buffer, nullptr);
}

template <Scalar T>
T power_of(const T& base, long exponent) {
  if constexpr (std::same_as<T, double>) {
    return std::pow(base, static_cast<double>(exponent));
  } else {
    return pow(base, exponent);
  }
}

template <Scalar T>
ExperimentReport table1_impl(const PrecisionContext& ctx) {
  ExperimentReport report;
  report.name = "table1";
  report.add_parameter("digits", std::to_string(ctx.digits()));
  Table table{"phi_powers", {"n", "i", "phi_pow", "reference", "relative_error"}, {}};
  Plot plot{"phi(n)^(i-1)", "i", "phi(n)^(i-1)", true, {}};
  double worst = 0.0;
  std::string outside;
  std::string mismatched;
  for (const ReferenceRow& row : kReferenceMultipliers) {
    const T base = phi<T>(row.n, ctx);
    Series series{"n=" + std::to_string(row.n), {}, {}};
    for (std::size_t k = 0; k < kTableIndices.size(); ++k) {
      const int i = kTableIndices[k];
      const T value = power_of(base, i - 1);
      const std::string reference_text = row.values[k];
      const double reference = std::strtod(reference_text.c_str(), nullptr);
      const double v = to_double(value);
      const double relative = std::abs(v - reference) / reference;
      worst = std::max(worst, relative);
      const std::string where = "(" + std::to_string(row.n) + "," + std::to_string(i) + ")";
      if (relative > kTableRelativeTolerance) outside += " " + where;
      const double rounded = round_to_significant(v, shown_significant_digits(reference_text));
      if (std::abs(rounded - reference) > 1e-12 * reference) mismatched += " " + where;
      table.add_row({std::to_string(row.n), std::to_string(i), format_value(value, ctx), reference_text,
                     format_double(relative, 4)});
      series.x.push_back(i);
      series.y.push_back(v);
    }
    plot.series.push_back(std::move(series));
  }
  report.tables.push_back(std::move(table));
  detail::add_plain_metric(report, "max_relative_error", worst, ctx.digits());
  report.add_check("relative_error_within_1e-3", outside.empty(),
                   outside.empty() ? "all 20 entries" : "outside tolerance at" + outside);
  if (!mismatched.empty()) {
    report.notices.push_back("rounding to the published digit count differs from the reference at" + mismatched);
  }
  report.plot = std::move(plot);
  return report;
}

template <Scalar T>
ExperimentReport beckermann_impl(const BeckermannParams& params, const PrecisionContext& ctx) {
  using std::sqrt;
  if (params.n < 1 || params.i_max < 1) throw std::invalid_argument("beckermann needs n >= 1 and i_max >= 1");
  ExperimentReport report;
  report.name = "beckermann";
  report.add_parameter("n", std::to_string(params.n));
  report.add_parameter("i_max", std::to_string(params.i_max));
  report.add_parameter("digits", std::to_string(ctx.digits()));

  // sigma_i(L_n)^2 = lambda_i(H_n); the eigenvalues come from the
  // rank-revealing factor, which stays accurate where Cholesky of the
  // rounded H_n would break down.
  const SpectralResult<T> lambda = hilbert_eigenvalues<T>(params.n, ctx);
  const std::size_t count = std::min(params.i_max, lambda.values.size());
  if (count < params.i_max) {
    report.notices.push_back("only " + std::to_string(count) + " eigenvalues resolved above the truncation bound");
  }
  const T base = phi<T>(static_cast<long>(params.n), ctx);
  const T sqrt_lambda1 = sqrt(lambda.values[0]);
  std::vector<T> sigma_l;
  Table table{"bound", {"i", "sigma_L", "bound", "ratio", "trusted", "verdict"}, {}};
  Series lhs_series{"sigma_i(L_n)", {}, {}};
  Series rhs_series{"2 phi(n)^(i-1) sqrt(sigma_1(H_n))", {}, {}};
  T factor = make_scalar<T>(2.0, ctx) * sqrt_lambda1;
  for (std::size_t i = 1; i <= count; ++i) {
    const T s = sqrt(lambda.values[i - 1]);
    sigma_l.push_back(s);
    const bool trusted = lambda.trusted[i - 1];
    const Verdict verdict = detail::verdict_for(trusted, s <= factor);
    report.verdicts.push_back(BoundVerdict{"sigma_i(L_n) <= 2 phi(n)^(i-1) sqrt(sigma_1(H_n))", i, verdict,
                                           format_value(s, ctx), format_value(factor, ctx)});
    table.add_row({std::to_string(i), format_value(s, ctx), format_value(factor, ctx),
                   format_value(T(s / factor), ctx), detail::yes_no(trusted), std::string(to_string(verdict))});
    lhs_series.x.push_back(static_cast<double>(i));
    lhs_series.y.push_back(to_double(s));
    rhs_series.x.push_back(static_cast<double>(i));
    rhs_series.y.push_back(to_double(factor));
    factor *= base;
  }
  report.tables.push_back(std::move(table));

  detail::add_metric(report, "phi_n", base, ctx);
  detail::add_metric(report, "sigma_1_H", lambda.values[0], ctx, std::optional<T>(lambda.trust_floor));
  std::size_t window = 0;
  while (window < count && lambda.trusted[window]) ++window;
  if (window >= 2) {
    const LogLinearFit fit = fit_log_linear(sigma_l, 1, window);
    detail::add_plain_metric(report, "fitted_K", -fit.slope, ctx.digits());
    detail::add_plain_metric(report, "fit_residual_rms", fit.residual_rms, ctx.digits());
  }
  if (lambda.truncation_bound) {
    detail::add_metric(report, "truncation_bound", *lambda.truncation_bound, ctx);
  }

  // Independent route for moderate n: singular values of the Cholesky factor
  // built from the exact LDL^T of H_n.
  constexpr std::size_t kCrossCheckMaxN = 100;
  if (params.n <= kCrossCheckMaxN) {
    const DenseMatrix<T> l = exact_cholesky_factor<T>(hilbert_segment(params.n), ctx);
    const SpectralResult<T> direct = singular_values(l, ctx);
    T worst = make_scalar<T>(0.0, ctx);
    for (std::size_t i = 0; i < count; ++i) {
      if (!lambda.trusted[i] || !direct.trusted[i]) continue;
      using std::abs;
      const T gap = abs(direct.values[i] * direct.values[i] - lambda.values[i]) / lambda.values[i];
      if (gap > worst) worst = gap;
    }
    detail::add_metric(report, "cholesky_route_max_relative_gap", worst, ctx);
    const T allowed = decimal_power<T>(-ctx.digits() / 2, ctx);
    report.add_check("cholesky_route_agrees", worst <= allowed,
                     "max relative gap " + format_value(worst, ctx) + " vs " + format_value(allowed, ctx));
  }
  const std::size_t violated = report.verdict_count(Verdict::kViolated);
  report.add_check("no_violations", violated == 0,
                   std::to_string(report.verdict_count(Verdict::kHolds)) + " holds, " + std::to_string(violated) +
                       " violated, " + std::to_string(report.verdict_count(Verdict::kUntrusted)) + " untrusted");
  report.plot = Plot{"Singular values of L_n and the exponential bound", "i", "value", true,
                     {std::move(lhs_series), std::move(rhs_series)}};
  return report;
}

constexpr double kBandLow = -3.7;
constexpr double kBandHigh = -3.4;

template <Scalar T>
ExperimentReport hilbert_asymptotics_impl(const HilbertAsymptoticsParams& params, const PrecisionContext& ctx) {
  using std::log;
  if (params.n_min < 1 || params.n_max < params.n_min) throw std::invalid_argument("need 1 <= n_min <= n_max");
  ExperimentReport report;
  report.name = "hilbert-asymptotics";
  report.add_parameter("n_min", std::to_string(params.n_min));
  report.add_parameter("n_max", std::to_string(params.n_max));
  report.add_parameter("digits", std::to_string(ctx.digits()));
  Table table{"smallest_eigenvalue", {"n", "sigma_n", "log_sigma_n_over_n", "trusted"}, {}};
  Series series{"ln sigma_n(H_n) / n", {}, {}};
  std::vector<double> ns;
  std::vector<double> logs;
  std::vector<double> rates;
  std::size_t last_n = 0;
  for (std::size_t n = params.n_min; n <= params.n_max; ++n) {
    const SpectralResult<T> lambda = hilbert_eigenvalues<T>(n, ctx);
    if (lambda.values.size() < n || !lambda.trusted[n - 1]) {
      report.notices.push_back("sigma_n(H_n) falls below the trust floor at n = " + std::to_string(n) +
                               "; range truncated to n <= " + std::to_string(n - 1));
      break;
    }
    const T smallest = lambda.values[n - 1];
    const double log_value = to_double(log(smallest));
    const double rate = log_value / static_cast<double>(n);
    table.add_row({std::to_string(n), format_value(smallest, ctx), format_double(rate, 10), "yes"});
    series.x.push_back(static_cast<double>(n));
    series.y.push_back(rate);
    ns.push_back(static_cast<double>(n));
    logs.push_back(log_value);
    rates.push_back(rate);
    last_n = n;
  }
  report.tables.push_back(std::move(table));
  if (rates.empty()) {
    report.add_check("range_nonempty", false, "no n with a trusted smallest eigenvalue");
    return report;
  }
  detail::add_plain_metric(report, "rate_at_n_max", rates.back(), ctx.digits());
  report.add_parameter("n_reached", std::to_string(last_n));
  if (ns.size() >= 4) {
    // Increments of ln sigma_n approach the limiting exponent much faster than
    // the averaged rate; fit the upper half of the range.
    const std::size_t half = ns.size() / 2;
    const std::vector<double> x(ns.begin() + static_cast<std::ptrdiff_t>(half), ns.end());
    const std::vector<double> y(logs.begin() + static_cast<std::ptrdiff_t>(half), logs.end());
    const double slope = fit_line(x, y).slope;
    detail::add_plain_metric(report, "fitted_limit_slope", slope, ctx.digits());
    report.add_check("limit_slope_in_band", slope >= kBandLow && slope <= kBandHigh,
                     "slope " + format_double(slope, 6) + " vs [-3.7, -3.4]");
  }
  bool decreasing = true;
  for (std::size_t k = 1; k < rates.size(); ++k) decreasing = decreasing && rates[k] < rates[k - 1];
  report.add_check("rate_decreasing", decreasing, "ln sigma_n(H_n)/n over n = " + std::to_string(params.n_min) +
                                                      ".." + std::to_string(last_n));
  constexpr std::size_t kBandN = 40;
  if (params.n_min <= kBandN && kBandN <= last_n) {
    const double at40 = rates[kBandN - params.n_min];
    report.add_check("rate_at_40_in_band", at40 >= kBandLow && at40 <= kBandHigh,
                     "value " + format_double(at40, 6) + " vs [-3.7, -3.4]");
  }
  report.plot = Plot{"Smallest eigenvalue rate of H_n", "n", "ln sigma_n / n", false, {std::move(series)}};
  return report;
}

}  // namespace

ExperimentReport run_table1(const PrecisionContext& ctx) {
  return with_scalar(ctx, [&]<Scalar T>() { return table1_impl<T>(ctx); });
}

ExperimentReport run_beckermann(const BeckermannParams& params, const PrecisionContext& ctx) {
  return with_scalar(ctx, [&]<Scalar T>() { return beckermann_impl<T>(params, ctx); });
}

ExperimentReport run_hilbert_asymptotics(const HilbertAsymptoticsParams& params, const PrecisionContext& ctx) {
  return with_scalar(ctx, [&]<Scalar T>() { return hilbert_asymptotics_impl<T>(params, ctx); });
}

}  // namespace hml
