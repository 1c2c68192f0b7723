#include <array>
#include <charconv>
#include <cmath>

#include "causalcell/cli.hpp"

namespace causalcell::cli {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";  // folds -0
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string csv_line(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += format_number(values[i]);
  }
  out += '\n';
  return out;
}

std::string csv_header(const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ',';
    out += names[i];
  }
  out += '\n';
  return out;
}

}  // namespace causalcell::cli
