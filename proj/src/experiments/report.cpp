#include "hml/experiments/report.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace hml {

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns.size()) {
    throw std::invalid_argument("table " + name + " expects " + std::to_string(columns.size()) + " cells, got " +
                                std::to_string(cells.size()));
  }
  rows.push_back(std::move(cells));
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kHolds:
      return "holds";
    case Verdict::kViolated:
      return "violated";
    case Verdict::kUntrusted:
      return "untrusted";
  }
  return "untrusted";
}

void ExperimentReport::add_check(std::string check_name, bool passed, std::string detail) {
  checks.push_back(Check{std::move(check_name), passed, std::move(detail)});
}

const Metric& ExperimentReport::metric(std::string_view metric_name) const {
  for (const Metric& m : metrics) {
    if (m.name == metric_name) return m;
  }
  throw std::out_of_range("report " + name + " has no metric " + std::string(metric_name));
}

const Check& ExperimentReport::check(std::string_view check_name) const {
  for (const Check& c : checks) {
    if (c.name == check_name) return c;
  }
  throw std::out_of_range("report " + name + " has no check " + std::string(check_name));
}

std::size_t ExperimentReport::verdict_count(Verdict verdict) const {
  return static_cast<std::size_t>(
      std::count_if(verdicts.begin(), verdicts.end(), [&](const BoundVerdict& v) { return v.verdict == verdict; }));
}

bool ExperimentReport::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string format_double(double x, int significant_digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*e", significant_digits - 1, x);
  return buffer;
}

}  // namespace hml
