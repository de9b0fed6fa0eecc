#pragma once

// Helpers shared by the experiment implementations.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hml/experiments/report.hpp"
#include "hml/spectra/spectra.hpp"

namespace hml::detail {

template <Scalar T>
void add_metric(ExperimentReport& report, std::string name, const T& value, const PrecisionContext& ctx,
                std::optional<T> trust_floor = std::nullopt) {
  Metric m{std::move(name), format_value(value, ctx), to_double(value), ctx.digits(), std::nullopt};
  if (trust_floor) m.trust_floor = format_value(*trust_floor, ctx);
  report.metrics.push_back(std::move(m));
}

inline void add_plain_metric(ExperimentReport& report, std::string name, double value, int digits) {
  report.metrics.push_back(Metric{std::move(name), format_double(value, 10), value, digits, std::nullopt});
}

/// Index/value pairs for plotting; values below the double range are dropped.
template <Scalar T>
Series spectrum_series(std::string name, const std::vector<T>& values, std::size_t count) {
  Series s{std::move(name), {}, {}};
  for (std::size_t i = 0; i < count && i < values.size(); ++i) {
    const double v = to_double(values[i]);
    if (v > 0.0 && std::isfinite(v)) {
      s.x.push_back(static_cast<double>(i + 1));
      s.y.push_back(v);
    }
  }
  return s;
}

inline Verdict verdict_for(bool trusted, bool holds) {
  if (!trusted) return Verdict::kUntrusted;
  return holds ? Verdict::kHolds : Verdict::kViolated;
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace hml::detail
