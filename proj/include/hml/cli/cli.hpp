#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hml/discretize/discretize.hpp"
#include "hml/experiments/report.hpp"

namespace hml::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kNumerical = 2, kIo = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown by parse_args for --help; carries the help text.
struct HelpRequested {
  std::string text;
};

struct RunConfig {
  std::string command;
  std::optional<std::size_t> n;
  std::optional<std::size_t> i_max;
  int digits = 15;
  DiscretizationScheme scheme = DiscretizationScheme::kExactGramian;
  std::optional<std::size_t> base;
  std::filesystem::path out_dir = "results";
  bool emit_svg = false;
  bool long_running = false;
};

/// Largest --n a command accepts without --long-running.
std::size_t desk_ceiling(const std::string& command);

/// Validated configuration from the arguments after the program name.
/// Throws UsageError or HelpRequested.
RunConfig parse_args(const std::vector<std::string>& args);

/// Runs one experiment command (not `all`).
ExperimentReport run_experiment(const RunConfig& cfg);

/// Norm-difference sizes for a configuration: the desk ladder (or the long
/// ladder) cut at --n, with --n itself as the last size.
std::vector<std::size_t> norm_diff_sizes(const RunConfig& cfg);

std::string table_csv(const Table& table);
std::string summary_json(const ExperimentReport& report, const RunConfig& cfg);
std::string plot_svg(const Plot& plot);

/// Writes <out_dir>/<name>/table_<k>.csv, summary.json and, if requested,
/// plot.svg. Returns the written paths. On failure removes what it wrote and
/// throws IoError.
std::vector<std::filesystem::path> emit_artifacts(const ExperimentReport& report, const RunConfig& cfg);

/// Full command-line entry point; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hml::cli
