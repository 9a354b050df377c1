#pragma once

#include <cmath>
#include <utility>

namespace cmcrad {

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Golden-section search for a minimum of a unimodal function on [a, b].
/// Stops once the bracket is narrower than `x_tol`.
template <typename F>
ScalarMinimum golden_section_minimize(F&& f, double a, double b, double x_tol, int max_iterations = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  if (a > b) std::swap(a, b);

  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);

  int it = 0;
  for (; it < max_iterations && (b - a) > x_tol; ++it) {
    if (fc < fd) {
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

  ScalarMinimum best{c, fc, it};
  if (fd < best.value) best = {d, fd, it};
  return best;
}

}  // namespace cmcrad
