#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hml/core/scalar.hpp"

namespace hml {

/// Named column set; cells are already formatted text.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells);
};

/// A scalar result together with the precision it was computed at and, for
/// spectral quantities, the absolute trust floor of the spectrum it came from.
struct Metric {
  std::string name;
  std::string value;
  double numeric = 0.0;
  int digits = 0;
  std::optional<std::string> trust_floor;
};

enum class Verdict { kHolds, kViolated, kUntrusted };

std::string_view to_string(Verdict verdict);

/// Outcome of one instance of an inequality, e.g. index i of a bound.
struct BoundVerdict {
  std::string bound;
  std::size_t index = 0;
  Verdict verdict = Verdict::kUntrusted;
  std::string lhs;
  std::string rhs;
};

/// A pass/fail expectation evaluated by the experiment itself.
struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = true;
  std::vector<Series> series;
};

struct ExperimentReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<Table> tables;
  std::vector<Metric> metrics;
  std::vector<BoundVerdict> verdicts;
  std::vector<Check> checks;
  std::vector<std::string> notices;
  std::optional<Plot> plot;

  void add_parameter(std::string key, std::string value) { parameters.emplace_back(std::move(key), std::move(value)); }
  void add_check(std::string check_name, bool passed, std::string detail);

  /// Throws std::out_of_range for unknown names.
  const Metric& metric(std::string_view metric_name) const;
  const Check& check(std::string_view check_name) const;
  std::size_t verdict_count(Verdict verdict) const;
  bool all_checks_pass() const;
};

/// Decimal scientific text: 16 significant digits in hardware mode, up to 40
/// in software mode.
template <Scalar T>
std::string format_value(const T& x, const PrecisionContext& ctx) {
  return format_scientific(x, ctx.is_hardware() ? 16 : (ctx.digits() < 40 ? ctx.digits() : 40));
}

std::string format_double(double x, int significant_digits = 10);

}  // namespace hml
