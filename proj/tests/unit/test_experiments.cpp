#include <doctest.h>

#include <cmath>

#include "hml/experiments/experiments.hpp"

using namespace hml;

namespace {

const double kPi = 3.14159265358979323846;

const Table& table_named(const ExperimentReport& r, const std::string& name) {
  for (const Table& t : r.tables) {
    if (t.name == name) return t;
  }
  throw std::out_of_range("no table " + name);
}

std::size_t column(const Table& t, const std::string& name) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (t.columns[c] == name) return c;
  }
  throw std::out_of_range("no column " + name);
}

double cell(const Table& t, std::size_t row, const std::string& name) {
  return std::stod(t.rows.at(row).at(column(t, name)));
}

bool same_report(const ExperimentReport& a, const ExperimentReport& b) {
  if (a.parameters != b.parameters || a.notices != b.notices) return false;
  if (a.tables.size() != b.tables.size() || a.metrics.size() != b.metrics.size()) return false;
  for (std::size_t k = 0; k < a.tables.size(); ++k) {
    if (a.tables[k].columns != b.tables[k].columns || a.tables[k].rows != b.tables[k].rows) return false;
  }
  for (std::size_t k = 0; k < a.metrics.size(); ++k) {
    if (a.metrics[k].value != b.metrics[k].value || a.metrics[k].trust_floor != b.metrics[k].trust_floor) return false;
  }
  for (std::size_t k = 0; k < a.verdicts.size(); ++k) {
    if (a.verdicts[k].verdict != b.verdicts[k].verdict || a.verdicts[k].lhs != b.verdicts[k].lhs) return false;
  }
  return a.verdicts.size() == b.verdicts.size();
}

}  // namespace

TEST_CASE("log-linear fit recovers exact exponential data") {
  std::vector<double> values;
  for (int i = 1; i <= 20; ++i) values.push_back(std::exp(-1.2 * i + 2));
  const LogLinearFit fit = fit_log_linear(values, 1, 20);
  CHECK(fit.slope == doctest::Approx(-1.2).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.residual_rms <= 1e-12);
  CHECK(fit.first == 1);
  CHECK(fit.last == 20);
  const LogLinearFit flat = fit_log_linear(std::vector<double>(6, 0.3), 1, 6);
  CHECK(flat.slope == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(flat.residual_rms >= 0.0);
}

TEST_CASE("power-law fit recovers exact polynomial data") {
  std::vector<double> values;
  for (int i = 1; i <= 30; ++i) values.push_back(3.0 * std::pow(i, -2.5));
  const LogLinearFit fit = fit_power_law(values, 2, 30);
  CHECK(fit.slope == doctest::Approx(-2.5).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(fit_log_linear(values, 2, 30).residual_rms > fit.residual_rms);
}

TEST_CASE("fit windows are validated") {
  const std::vector<double> values{1.0, 0.5, 0.0, 0.1};
  CHECK_THROWS_AS(fit_log_linear(values, 1, 3), std::domain_error);
  CHECK_NOTHROW(fit_log_linear(values, 1, 2));
  CHECK_THROWS(fit_log_linear(values, 3, 2));
  CHECK_THROWS(fit_log_linear(values, 1, 5));
  CHECK_THROWS(fit_line({1.0}, {2.0, 3.0}));
}

TEST_CASE("report bookkeeping") {
  ExperimentReport r;
  r.add_check("a", true, "");
  CHECK(r.all_checks_pass());
  r.add_check("b", false, "off");
  CHECK_FALSE(r.all_checks_pass());
  CHECK(r.check("b").detail == "off");
  CHECK_THROWS_AS(r.check("c"), std::out_of_range);
  CHECK_THROWS_AS(r.metric("x"), std::out_of_range);
  r.verdicts.push_back({"bound", 1, Verdict::kHolds, "1", "2"});
  r.verdicts.push_back({"bound", 2, Verdict::kUntrusted, "1e-40", "2"});
  r.verdicts.push_back({"bound", 3, Verdict::kViolated, "3", "2"});
  CHECK(r.verdict_count(Verdict::kHolds) == 1);
  CHECK(r.verdict_count(Verdict::kViolated) == 1);
  CHECK(r.verdict_count(Verdict::kUntrusted) == 1);
  CHECK(to_string(Verdict::kHolds) == "holds");
  CHECK(to_string(Verdict::kViolated) == "violated");
  CHECK(to_string(Verdict::kUntrusted) == "untrusted");
  Table t{"t", {"x", "y"}, {}};
  CHECK_THROWS(t.add_row({"1"}));
  CHECK(format_double(0.5, 3) == "5.00e-01");
}

TEST_CASE("table 1 entries") {
  const ExperimentReport r = run_table1(PrecisionContext::hardware());
  const Table& t = table_named(r, "phi_powers");
  CHECK(t.rows.size() == 20);
  CHECK(t.columns == std::vector<std::string>{"n", "i", "phi_pow", "reference", "relative_error"});
  auto find = [&](const std::string& n, const std::string& i) {
    for (std::size_t row = 0; row < t.rows.size(); ++row) {
      if (t.rows[row][0] == n && t.rows[row][1] == i) return row;
    }
    throw std::out_of_range("missing row");
  };
  CHECK(cell(t, find("100", "2"), "phi_pow") == doctest::Approx(0.4777).epsilon(1e-3));
  CHECK(cell(t, find("1000000", "10"), "phi_pow") == doctest::Approx(0.0612).epsilon(1e-3));
  CHECK(cell(t, find("1000", "51"), "phi_pow") == doctest::Approx(1.1920e-12).epsilon(1e-3));
  for (std::size_t row = 0; row < t.rows.size(); ++row) {
    const double value = cell(t, row, "phi_pow");
    const double reference = cell(t, row, "reference");
    CHECK(cell(t, row, "relative_error") == doctest::Approx(std::abs(value - reference) / reference).epsilon(1e-3));
  }
  for (const Metric& m : r.metrics) CHECK(m.digits == 15);
}

TEST_CASE("first singular function of the integration operator is a half-cosine arch") {
  SingularFunctionsParams p;
  p.n = 200;
  p.index = 1;
  const ExperimentReport r = run_singular_functions(p, PrecisionContext::hardware());
  CHECK(r.check("u_J_matches_analytic").passed);
  const Table& t = table_named(r, "singular_functions");
  double previous = INFINITY;
  for (std::size_t row = 0; row < t.rows.size(); ++row) {
    const double u = cell(t, row, "u_J");
    CHECK(u > 0.0);
    CHECK(u < previous);
    previous = u;
  }
}

TEST_CASE("gramian decay at a small size") {
  GramianDecayParams p;
  p.n = 50;
  p.i_max = 20;
  const auto ctx = PrecisionContext::software(30);
  const ExperimentReport r = run_gramian_decay(p, ctx);
  CHECK(r.check("sigma_1_below_norm_product").passed);
  CHECK(r.check("slope_in_band").passed);
  const Metric& sigma1 = r.metric("sigma_1");
  CHECK(sigma1.digits == 30);
  REQUIRE(sigma1.trust_floor.has_value());
  CHECK(std::stod(*sigma1.trust_floor) == doctest::Approx(sigma1.numeric * 1e-25).epsilon(1e-10));
  CHECK(sigma1.numeric <= std::sqrt(kPi) * 2.0 / kPi);
}

TEST_CASE("fit windows stop at the trust floor") {
  GramianDecayParams p;
  p.n = 60;
  p.i_max = 60;
  const ExperimentReport r = run_gramian_decay(p, PrecisionContext::hardware());
  const Table& t = table_named(r, "singular_values");
  std::size_t prefix = 0;
  while (prefix < t.rows.size() && t.rows[prefix][column(t, "trusted")] == "yes") ++prefix;
  CHECK(prefix < 60);
  std::string window;
  for (const auto& [key, value] : r.parameters) {
    if (key == "fit_window") window = value;
  }
  CHECK(window == "1.." + std::to_string(prefix));
}

TEST_CASE("norm difference curve") {
  const auto hw = PrecisionContext::hardware();
  NormDifferenceParams same;
  same.base = 100;
  same.n_list = {100};
  const ExperimentReport zero = run_norm_difference(same, hw);
  CHECK(zero.metric("value_at_largest_n").numeric == 0.0);

  NormDifferenceParams p;
  p.base = 10;
  p.n_list = {20, 40, 80, 160};
  const ExperimentReport r = run_norm_difference(p, hw);
  CHECK(r.check("power_iteration_converged").passed);
  CHECK(r.check("strictly_increasing").passed);
  CHECK(r.check("below_pi").passed);
  const Table& t = r.tables.front();
  for (std::size_t row = 0; row < t.rows.size(); ++row) {
    CHECK(cell(t, row, "spectral_norm") <= cell(t, row, "frobenius_norm") * (1.0 + 1e-12));
  }
  NormDifferenceParams bad;
  bad.base = 50;
  bad.n_list = {40};
  CHECK_THROWS(run_norm_difference(bad, hw));
}

TEST_CASE("beckermann bound at a small size") {
  BeckermannParams p;
  p.n = 30;
  p.i_max = 20;
  const ExperimentReport r = run_beckermann(p, PrecisionContext::software(60));
  CHECK(r.verdict_count(Verdict::kViolated) == 0);
  REQUIRE_FALSE(r.verdicts.empty());
  CHECK(r.verdicts.front().index == 1);
  CHECK(r.verdicts.front().verdict == Verdict::kHolds);
  CHECK(r.check("cholesky_route_agrees").passed);
}

TEST_CASE("hilbert asymptotics at the smallest sizes") {
  HilbertAsymptoticsParams p;
  p.n_min = 1;
  p.n_max = 6;
  const ExperimentReport r = run_hilbert_asymptotics(p, PrecisionContext::software(40));
  const Table& t = r.tables.front();
  CHECK(cell(t, 0, "sigma_n") == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cell(t, 1, "sigma_n") == doctest::Approx((4 - std::sqrt(13.0)) / 6).epsilon(1e-14));
  CHECK(cell(t, 1, "sigma_n") == doctest::Approx(0.065741).epsilon(1e-5));
  CHECK(r.check("rate_decreasing").passed);
}

TEST_CASE("kernel probe") {
  const ExperimentReport r = run_kernel_probe(KernelProbeParams{}, PrecisionContext::hardware());
  CHECK(r.check("closed_form_matches_series").passed);
  CHECK(r.check("symmetric").passed);
  CHECK(r.check("zero_on_edges").passed);
  CHECK(r.check("difference_quotients_grow").passed);
  CHECK(r.check("log_consistent_ratio").passed);
}

TEST_CASE("product bound at a small size") {
  ProductBoundParams p;
  p.n = 50;
  const ExperimentReport r = run_product_bound(p, PrecisionContext::software(100));
  CHECK(r.verdict_count(Verdict::kViolated) == 0);
  CHECK(r.verdict_count(Verdict::kHolds) >= 10);
  CHECK(r.verdicts.front().index == 1);
  CHECK(r.verdicts.front().verdict == Verdict::kHolds);
  const Table& t = r.tables.front();
  for (std::size_t row = 0; row < t.rows.size(); ++row) {
    if (t.rows[row][column(t, "trusted")] != "yes") continue;
    const double ratio = cell(t, row, "ratio_sigma_i_A");
    CHECK(std::isfinite(ratio));
    CHECK(ratio > 0.0);
  }
}

TEST_CASE("runs are reproducible") {
  GramianDecayParams g;
  g.n = 40;
  const auto ctx = PrecisionContext::software(30);
  CHECK(same_report(run_gramian_decay(g, ctx), run_gramian_decay(g, ctx)));
  ProductBoundParams p;
  p.n = 30;
  CHECK(same_report(run_product_bound(p, ctx), run_product_bound(p, ctx)));
  NormDifferenceParams n;
  n.base = 5;
  n.n_list = {10, 20};
  const auto hw = PrecisionContext::hardware();
  CHECK(same_report(run_norm_difference(n, hw), run_norm_difference(n, hw)));
}

TEST_CASE("experiment registry") {
  CHECK(experiment_names().size() == 9);
  CHECK(experiment_names().front() == "table1");
  CHECK(default_digits("beckermann") == 150);
  CHECK(default_digits("table1") == 15);
  CHECK_THROWS_AS(default_digits("nope"), std::invalid_argument);
}
