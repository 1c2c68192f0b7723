#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "causalcell/cli.hpp"
#include "causalcell/errors.hpp"

namespace causalcell::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool known_key(const std::string& key) {
  const auto& keys = parameter_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = {
      "unitary", "unitary-optimal", "gibbs", "gibbs-compare", "stabilize", "rescue-time"};
  return names;
}

const std::vector<std::string>& parameter_keys() {
  static const std::vector<std::string> keys = {
      "omega", "coupling", "p",         "beta",         "k",           "x1",
      "y1",    "x2",       "y2",        "t-max",        "steps",       "ha-x",
      "ha-y",  "ha-z",     "rate",      "branch-duration", "p-steps",  "threshold",
      "initial", "battery-start", "omega1"};
  return keys;
}

Parameters parse_config_text(const std::string& text) {
  Parameters out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config line " + std::to_string(number) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::replace(key.begin(), key.end(), '_', '-');
    if (!known_key(key)) {
      throw InvalidArgument("config line " + std::to_string(number) + ": unknown key '" + key +
                            "'");
    }
    if (value.empty()) {
      throw InvalidArgument("config line " + std::to_string(number) + ": empty value");
    }
    out[key] = value;
  }
  return out;
}

Parameters load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

bool parse_args(int argc, const char* const* argv, RunConfig& config, std::ostream& out) {
  CLI::App app{"Switched charging and stabilization of qubit batteries", "causalcell"};
  std::string command;
  std::string config_path;
  std::string out_path;
  app.add_option("command", command, "Command to run")
      ->required()
      ->check(CLI::IsMember(commands()));
  app.add_option("--config", config_path, "key = value file; flags take precedence");
  app.add_option("--out", out_path, "CSV destination (default stdout)");
  std::map<std::string, std::optional<std::string>> flags;
  for (const auto& key : parameter_keys()) {
    flags[key];
    app.add_option("--" + key, flags[key]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return false;
  } catch (const CLI::ParseError& e) {
    throw InvalidArgument(e.what());
  }

  config.command = command;
  config.output_path = out_path;
  config.parameters = config_path.empty() ? Parameters{} : load_config_file(config_path);
  for (const auto& [key, value] : flags) {
    if (value) config.parameters[key] = *value;
  }
  return true;
}

}  // namespace causalcell::cli
