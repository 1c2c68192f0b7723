#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace causalcell {

/// Maximizer of a unimodal function on [lo, hi], to |hi - lo| <= tol.
/// Returns (argmax, max).
inline std::pair<double, double> golden_section_max(const std::function<double(double)>& f,
                                                    double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double fx = f(x);
  if (fc > fx && fc >= fd) return {c, fc};
  if (fd > fx) return {d, fd};
  return {x, fx};
}

/// n + 1 evenly spaced points lo, ..., hi.
inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
  }
  return out;
}

}  // namespace causalcell
