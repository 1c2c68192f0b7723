#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace causalcell::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;

using Parameters = std::map<std::string, std::string>;

struct RunConfig {
  std::string command;
  Parameters parameters;
  /// Empty writes to stdout.
  std::string output_path;
};

const std::vector<std::string>& commands();
/// Every key accepted by flags and config files.
const std::vector<std::string>& parameter_keys();

/// `key = value` lines; `#` starts a comment. Throws InvalidArgument.
Parameters parse_config_text(const std::string& text);
Parameters load_config_file(const std::string& path);

/// Parses argv; flags override values from --config. Throws InvalidArgument.
/// Returns false (after printing help to `out`) when --help was requested.
bool parse_args(int argc, const char* const* argv, RunConfig& config, std::ostream& out);

/// Shortest round-trip decimal form.
std::string format_number(double v);
std::string csv_line(const std::vector<double>& values);
std::string csv_header(const std::vector<std::string>& names);

/// The CSV a command produces. Throws InvalidArgument or NumericalFailure.
std::string render(const RunConfig& config, std::ostream& diagnostics);

/// Runs the command and writes its CSV; returns the exit code.
int run(const RunConfig& config, std::ostream& diagnostics);

/// argv entry point.
int main_entry(int argc, const char* const* argv);

}  // namespace causalcell::cli
