#include "hml/cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <map>
#include <ostream>

#include "hml/core/errors.hpp"
#include "hml/experiments/experiments.hpp"

namespace hml::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::size_t kNormDiffMinimum = 1000;
constexpr double kNormDiffLongTarget = 2.19;
constexpr double kNormDiffLongTolerance = 0.05;
const std::vector<std::size_t> kNormDiffDeskSizes{1000, 2000, 4000};
const std::vector<std::size_t> kNormDiffLongSizes{1000, 2000, 4000, 8000, 12000};

// Which of --n, --i-max, --scheme, --base each command takes.
struct FlagSet {
  bool n = false;
  bool i_max = false;
  bool scheme = false;
  bool base = false;
};

const std::map<std::string, FlagSet, std::less<>>& command_flags() {
  static const std::map<std::string, FlagSet, std::less<>> flags{
      {"table1", {}},
      {"singular-functions", {true, true, true, false}},
      {"gramian-decay", {true, true, false, false}},
      {"discretized-decay", {true, true, true, false}},
      {"norm-diff", {true, false, false, true}},
      {"beckermann", {true, true, false, false}},
      {"hilbert-asymptotics", {true, false, false, false}},
      {"kernel-probe", {true, false, false, false}},
      {"product-bound", {true, false, false, false}},
      {"all", {}},
  };
  return flags;
}

std::size_t default_n(const std::string& command) {
  if (command == "singular-functions") return 1000;
  if (command == "gramian-decay") return 100;
  if (command == "discretized-decay") return 2000;
  if (command == "beckermann") return 100;
  if (command == "hilbert-asymptotics") return 40;
  if (command == "kernel-probe") return 21;
  if (command == "product-bound") return 50;
  return 0;
}

void ensure_writable(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
  const fs::path probe = dir / ".write_probe";
  {
    std::ofstream f(probe, std::ios::binary);
    if (!(f << "x") || !f.flush()) {
      throw IoError("output directory is not writable: " + dir.string());
    }
  }
  fs::remove(probe, ec);
}

std::string format_tick(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%g", v);
  return buffer;
}

std::string format_coord(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", v);
  return buffer;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string csv_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.close();
  if (!f) throw IoError("failed writing " + path.string());
}

}  // namespace

std::size_t desk_ceiling(const std::string& command) {
  if (command == "singular-functions") return 2000;
  if (command == "gramian-decay") return 200;
  if (command == "discretized-decay") return 2000;
  if (command == "norm-diff") return 4000;
  if (command == "beckermann") return 1000;
  if (command == "hilbert-asymptotics") return 60;
  if (command == "kernel-probe") return 201;
  if (command == "product-bound") return 100;
  return 0;
}

RunConfig parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Singular value experiments for the Hausdorff moment operator and Hilbert matrices", "hmlab"};
  std::string command;
  long long n = 0;
  long long i_max = 0;
  long long digits = 0;
  long long base = 0;
  std::string scheme;
  std::string out = "results";
  bool svg = false;
  bool long_running = false;
  std::string names;
  for (const auto& [name, flags] : command_flags()) names += (names.empty() ? "" : ", ") + name;
  app.add_option("command", command, "Experiment to run: " + names)->required();
  auto* n_opt = app.add_option("--n", n, "Problem size (grid cells, matrix order or largest size)");
  auto* i_opt = app.add_option("--i-max", i_max, "Number of singular values, or the index of the singular function");
  auto* d_opt = app.add_option("--digits", digits, "Working precision in decimal digits (>= 10)");
  auto* s_opt = app.add_option("--scheme", scheme, "Discretization of A: exact-gramian or product");
  auto* b_opt = app.add_option("--base", base, "Order of the subtracted Hilbert block for norm-diff");
  app.add_option("--out", out, "Output directory");
  app.add_flag("--svg", svg, "Also write plot.svg");
  app.add_flag("--long-running", long_running, "Allow sizes above the desk ceiling");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const auto it = command_flags().find(command);
  if (it == command_flags().end()) throw UsageError("unknown command '" + command + "'; expected one of " + names);
  const FlagSet& allowed = it->second;
  auto reject = [&](CLI::Option* opt, bool ok, const char* flag) {
    if (opt->count() > 0 && !ok) throw UsageError(std::string(flag) + " does not apply to " + command);
  };
  reject(n_opt, allowed.n, "--n");
  reject(i_opt, allowed.i_max, "--i-max");
  reject(s_opt, allowed.scheme, "--scheme");
  reject(b_opt, allowed.base, "--base");
  reject(d_opt, command != "all", "--digits");

  RunConfig cfg;
  cfg.command = command;
  cfg.emit_svg = svg;
  cfg.long_running = long_running;
  cfg.out_dir = out;
  cfg.digits = command == "all" ? 0 : default_digits(command);
  if (d_opt->count() > 0) {
    if (digits < 10) throw UsageError("--digits must be at least 10");
    if (digits > 100000) throw UsageError("--digits is unreasonably large");
    cfg.digits = static_cast<int>(digits);
  }
  if (n_opt->count() > 0) {
    if (n < 1) throw UsageError("--n must be at least 1");
    cfg.n = static_cast<std::size_t>(n);
    if (!long_running && *cfg.n > desk_ceiling(command)) {
      throw UsageError("--n " + std::to_string(*cfg.n) + " exceeds the desk ceiling " +
                       std::to_string(desk_ceiling(command)) + " for " + command + "; pass --long-running");
    }
  }
  if (b_opt->count() > 0) {
    if (base < 1) throw UsageError("--base must be at least 1");
    cfg.base = static_cast<std::size_t>(base);
  }
  if (command == "norm-diff") {
    const std::size_t floor = std::max(kNormDiffMinimum, cfg.base.value_or(100));
    if (cfg.n && *cfg.n < floor) {
      throw UsageError("norm-diff needs --n >= " + std::to_string(floor) + " (smallest size of the curve and >= base)");
    }
    if (cfg.base && *cfg.base > norm_diff_sizes(cfg).front()) {
      throw UsageError("--base must not exceed the smallest size " + std::to_string(norm_diff_sizes(cfg).front()));
    }
  }
  if (command == "kernel-probe" && cfg.n && *cfg.n < 2) throw UsageError("kernel-probe needs --n >= 2");
  if (i_opt->count() > 0) {
    if (i_max < 1) throw UsageError("--i-max must be at least 1");
    cfg.i_max = static_cast<std::size_t>(i_max);
    const std::size_t order = cfg.n.value_or(default_n(command));
    if (*cfg.i_max > order) throw UsageError("--i-max must not exceed n = " + std::to_string(order));
  }
  if (command == "gramian-decay" && cfg.n.value_or(100) < 2) throw UsageError("gramian-decay needs --n >= 2");
  if (command == "gramian-decay" && cfg.i_max.value_or(std::min<std::size_t>(20, cfg.n.value_or(100))) < 2) {
    throw UsageError("gramian-decay needs --i-max >= 2");
  }
  if (s_opt->count() > 0) {
    try {
      cfg.scheme = parse_scheme(scheme);
    } catch (const std::invalid_argument&) {
      throw UsageError("unknown scheme '" + scheme + "'; expected exact-gramian or product");
    }
  }
  ensure_writable(cfg.out_dir);
  return cfg;
}

std::vector<std::size_t> norm_diff_sizes(const RunConfig& cfg) {
  const std::vector<std::size_t>& ladder = cfg.long_running ? kNormDiffLongSizes : kNormDiffDeskSizes;
  if (!cfg.n) return ladder;
  std::vector<std::size_t> sizes;
  for (std::size_t s : ladder) {
    if (s < *cfg.n) sizes.push_back(s);
  }
  sizes.push_back(*cfg.n);
  return sizes;
}

ExperimentReport run_experiment(const RunConfig& cfg) {
  const PrecisionContext ctx = PrecisionContext::for_digits(cfg.digits);
  const std::string& c = cfg.command;
  const auto order = [&](std::size_t fallback) { return cfg.n.value_or(fallback); };
  if (c == "table1") return run_table1(ctx);
  if (c == "singular-functions") {
    const std::size_t n = order(1000);
    return run_singular_functions({n, cfg.i_max.value_or(std::min<std::size_t>(10, n)), cfg.scheme}, ctx);
  }
  if (c == "gramian-decay") {
    const std::size_t n = order(100);
    return run_gramian_decay({n, cfg.i_max.value_or(std::min<std::size_t>(20, n))}, ctx);
  }
  if (c == "discretized-decay") {
    const std::size_t n = order(2000);
    return run_discretized_decay({n, cfg.i_max.value_or(std::min<std::size_t>(60, n)), cfg.scheme}, ctx);
  }
  if (c == "norm-diff") {
    NormDifferenceParams p;
    p.base = cfg.base.value_or(100);
    p.n_list = norm_diff_sizes(cfg);
    if (p.n_list.back() == kNormDiffLongSizes.back()) {
      p.expected_at_largest = kNormDiffLongTarget;
      p.expected_tolerance = kNormDiffLongTolerance;
    }
    return run_norm_difference(p, ctx);
  }
  if (c == "beckermann") {
    const std::size_t n = order(100);
    return run_beckermann({n, cfg.i_max.value_or(std::min<std::size_t>(40, n))}, ctx);
  }
  if (c == "hilbert-asymptotics") {
    const std::size_t n_max = order(40);
    return run_hilbert_asymptotics({std::min<std::size_t>(5, n_max), n_max}, ctx);
  }
  if (c == "kernel-probe") {
    KernelProbeParams p;
    p.grid = order(21);
    return run_kernel_probe(p, ctx);
  }
  if (c == "product-bound") return run_product_bound({order(50)}, ctx);
  throw UsageError("no experiment named '" + c + "'");
}

std::string table_csv(const Table& table) {
  std::string out;
  for (std::size_t k = 0; k < table.columns.size(); ++k) out += (k ? "," : "") + csv_cell(table.columns[k]);
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + csv_cell(row[k]);
    out += '\n';
  }
  return out;
}

std::string summary_json(const ExperimentReport& report, const RunConfig& cfg) {
  using nlohmann::ordered_json;
  const PrecisionContext ctx = PrecisionContext::for_digits(cfg.digits);
  ordered_json j;
  j["experiment"] = report.name;
  ordered_json params = ordered_json::object();
  for (const auto& [key, value] : report.parameters) params[key] = value;
  j["parameters"] = params;
  j["precision"] = {{"digits", ctx.digits()},
                    {"mode", ctx.is_hardware() ? "hardware" : "software"},
                    {"bits", ctx.is_hardware() ? 53L : ctx.bits()},
                    {"tolerance", "1e" + std::to_string(ctx.tolerance_exponent())},
                    {"trust_floor_factor", "1e" + std::to_string(ctx.trust_exponent())}};
  j["flags"] = {{"long_running", cfg.long_running}, {"svg", cfg.emit_svg}};
  ordered_json metrics = ordered_json::array();
  for (const Metric& m : report.metrics) {
    ordered_json entry{{"name", m.name}, {"value", m.value}, {"numeric", m.numeric}, {"digits", m.digits}};
    entry["trust_floor"] = m.trust_floor ? ordered_json(*m.trust_floor) : ordered_json(nullptr);
    metrics.push_back(entry);
  }
  j["metrics"] = metrics;
  ordered_json items = ordered_json::array();
  for (const BoundVerdict& v : report.verdicts) {
    items.push_back({{"bound", v.bound}, {"index", v.index}, {"verdict", to_string(v.verdict)}, {"lhs", v.lhs},
                     {"rhs", v.rhs}});
  }
  j["verdicts"] = {{"holds", report.verdict_count(Verdict::kHolds)},
                   {"violated", report.verdict_count(Verdict::kViolated)},
                   {"untrusted", report.verdict_count(Verdict::kUntrusted)},
                   {"items", items}};
  ordered_json checks = ordered_json::array();
  for (const Check& c : report.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  j["checks"] = checks;
  j["all_checks_pass"] = report.all_checks_pass();
  j["notices"] = report.notices;
  ordered_json tables = ordered_json::array();
  std::vector<std::string> artifacts;
  for (std::size_t k = 0; k < report.tables.size(); ++k) {
    const std::string file = "table_" + std::to_string(k + 1) + ".csv";
    tables.push_back({{"name", report.tables[k].name},
                      {"file", file},
                      {"columns", report.tables[k].columns},
                      {"rows", report.tables[k].rows.size()}});
    artifacts.push_back(file);
  }
  j["tables"] = tables;
  artifacts.push_back("summary.json");
  if (cfg.emit_svg && report.plot) artifacts.push_back("plot.svg");
  j["artifacts"] = artifacts;
  return j.dump(2) + "\n";
}

std::string plot_svg(const Plot& plot) {
  constexpr double kWidth = 760;
  constexpr double kHeight = 460;
  constexpr double kLeft = 80;
  constexpr double kRight = 200;
  constexpr double kTop = 40;
  constexpr double kBottom = 60;
  static const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  const auto y_of = [&](double y) { return plot.log_y ? std::log10(y) : y; };
  const auto usable = [&](double x, double y) { return std::isfinite(x) && std::isfinite(y) && (!plot.log_y || y > 0); };
  double x_min = INFINITY, x_max = -INFINITY, y_min = INFINITY, y_max = -INFINITY;
  for (const Series& s : plot.series) {
    for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
      if (!usable(s.x[k], s.y[k])) continue;
      x_min = std::min(x_min, s.x[k]);
      x_max = std::max(x_max, s.x[k]);
      y_min = std::min(y_min, y_of(s.y[k]));
      y_max = std::max(y_max, y_of(s.y[k]));
    }
  }
  if (!std::isfinite(x_min)) x_min = 0, x_max = 1, y_min = 0, y_max = 1;
  if (x_max == x_min) x_min -= 0.5, x_max += 0.5;
  if (plot.log_y) {
    y_min = std::floor(y_min);
    y_max = std::ceil(y_max);
  }
  if (y_max == y_min) y_min -= 0.5, y_max += 0.5;
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * pw; };
  const auto py = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * ph; };

  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"760\" height=\"460\" viewBox=\"0 0 760 460\">\n";
  out += "<rect width=\"760\" height=\"460\" fill=\"white\"/>\n";
  out += "<text x=\"" + format_coord(kLeft + pw / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
         xml_escape(plot.title) + "</text>\n";
  out += "<rect x=\"" + format_coord(kLeft) + "\" y=\"" + format_coord(kTop) + "\" width=\"" + format_coord(pw) +
         "\" height=\"" + format_coord(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  // y ticks: decades on a log axis, five even steps otherwise.
  const int y_steps = plot.log_y ? static_cast<int>(y_max - y_min) : 5;
  const int y_stride = std::max(1, y_steps / 10);
  for (int k = 0; k <= y_steps; k += y_stride) {
    const double v = y_min + (y_max - y_min) * k / y_steps;
    const std::string label = plot.log_y ? "1e" + std::to_string(static_cast<int>(std::lround(v))) : format_tick(v);
    out += "<line x1=\"" + format_coord(kLeft - 5) + "\" x2=\"" + format_coord(kLeft) + "\" y1=\"" + format_coord(py(v)) +
           "\" y2=\"" + format_coord(py(v)) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + format_coord(kLeft - 8) + "\" y=\"" + format_coord(py(v) + 4) +
           "\" text-anchor=\"end\" font-size=\"11\">" + label + "</text>\n";
  }
  for (int k = 0; k <= 5; ++k) {
    const double v = x_min + (x_max - x_min) * k / 5;
    out += "<line x1=\"" + format_coord(px(v)) + "\" x2=\"" + format_coord(px(v)) + "\" y1=\"" +
           format_coord(kTop + ph) + "\" y2=\"" + format_coord(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + format_coord(px(v)) + "\" y=\"" + format_coord(kTop + ph + 18) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + format_tick(v) + "</text>\n";
  }
  out += "<text x=\"" + format_coord(kLeft + pw / 2) + "\" y=\"" + format_coord(kHeight - 16) +
         "\" text-anchor=\"middle\" font-size=\"13\">" + xml_escape(plot.x_label) + "</text>\n";
  out += "<text x=\"18\" y=\"" + format_coord(kTop + ph / 2) + "\" text-anchor=\"middle\" font-size=\"13\" " +
         "transform=\"rotate(-90 18 " + format_coord(kTop + ph / 2) + ")\">" + xml_escape(plot.y_label) + "</text>\n";
  for (std::size_t s = 0; s < plot.series.size(); ++s) {
    const Series& series = plot.series[s];
    const std::string color = kColors[s % (sizeof kColors / sizeof kColors[0])];
    std::string points;
    for (std::size_t k = 0; k < series.x.size() && k < series.y.size(); ++k) {
      if (!usable(series.x[k], series.y[k])) continue;
      points += (points.empty() ? "" : " ") + format_coord(px(series.x[k])) + "," + format_coord(py(y_of(series.y[k])));
    }
    out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    const double ly = kTop + 14 + 18 * static_cast<double>(s);
    out += "<line x1=\"" + format_coord(kLeft + pw + 12) + "\" x2=\"" + format_coord(kLeft + pw + 32) + "\" y1=\"" +
           format_coord(ly) + "\" y2=\"" + format_coord(ly) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + format_coord(kLeft + pw + 38) + "\" y=\"" + format_coord(ly + 4) + "\" font-size=\"11\">" +
           xml_escape(series.name) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

std::vector<fs::path> emit_artifacts(const ExperimentReport& report, const RunConfig& cfg) {
  const fs::path dir = cfg.out_dir / report.name;
  std::error_code ec;
  const bool existed = fs::exists(dir, ec);
  std::vector<fs::path> written;
  // Only paths that are ours to delete on failure: new files or earlier
  // artifacts being overwritten, never something else in the way.
  const auto write = [&](const fs::path& path, const std::string& content) {
    std::error_code probe;
    if (!fs::exists(path, probe) || fs::is_regular_file(path, probe)) written.push_back(path);
    write_file(path, content);
  };
  try {
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create " + dir.string());
    for (std::size_t k = 0; k < report.tables.size(); ++k) {
      write(dir / ("table_" + std::to_string(k + 1) + ".csv"), table_csv(report.tables[k]));
    }
    write(dir / "summary.json", summary_json(report, cfg));
    if (cfg.emit_svg && report.plot) {
      write(dir / "plot.svg", plot_svg(*report.plot));
    }
  } catch (const IoError&) {
    for (const fs::path& p : written) fs::remove(p, ec);
    if (!existed) fs::remove(dir, ec);
    throw;
  }
  return written;
}

namespace {

// One line per check plus the verdict tally; returns whether any verdict is
// violated or the power iteration failed to converge.
bool print_report(const ExperimentReport& report, const fs::path& dir, std::ostream& out) {
  std::size_t passed = 0;
  for (const Check& c : report.checks) passed += c.passed ? 1 : 0;
  out << report.name << ": " << passed << "/" << report.checks.size() << " checks passed";
  if (!report.verdicts.empty()) {
    out << "; verdicts " << report.verdict_count(Verdict::kHolds) << " holds, "
        << report.verdict_count(Verdict::kViolated) << " violated, " << report.verdict_count(Verdict::kUntrusted)
        << " untrusted";
  }
  out << " -> " << dir.string() << "\n";
  for (const Check& c : report.checks) out << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name << ": " << c.detail << "\n";
  for (const std::string& n : report.notices) out << "  note: " << n << "\n";
  bool numerical_failure = report.verdict_count(Verdict::kViolated) > 0;
  for (const Check& c : report.checks) {
    if (c.name == "power_iteration_converged" && !c.passed) numerical_failure = true;
  }
  return numerical_failure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kSuccess;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  }

  std::vector<RunConfig> runs;
  if (cfg.command == "all") {
    for (std::string_view name : experiment_names()) {
      RunConfig c = cfg;
      c.command = std::string(name);
      c.digits = default_digits(name);
      runs.push_back(c);
    }
  } else {
    runs.push_back(cfg);
  }
  int code = kSuccess;
  for (const RunConfig& c : runs) {
    try {
      const ExperimentReport report = run_experiment(c);
      emit_artifacts(report, c);
      if (print_report(report, c.out_dir / report.name, out)) code = kNumerical;
    } catch (const IoError& e) {
      err << "error: " << e.what() << "\n";
      return kIo;
    } catch (const NumericalError& e) {
      err << c.command << ": numerical failure: " << e.what() << "\n";
      code = kNumerical;
    } catch (const std::invalid_argument& e) {
      err << c.command << ": invalid parameters: " << e.what() << "\n";
      return kUsage;
    } catch (const std::exception& e) {
      err << c.command << ": " << e.what() << "\n";
      code = kNumerical;
    }
  }
  return code;
}

}  // namespace hml::cli
