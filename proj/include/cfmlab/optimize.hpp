#pragma once
#include <cmath>
#include <utility>

namespace cfmlab {

struct Maximum {
  double x;
  double value;
};

// Golden-section search for the maximum of a unimodal function on [lo, hi].
// Endpoints are included in the final comparison so boundary optima are found.
template <class F>
Maximum golden_section_max(F&& f, double lo, double hi, int max_iterations = 300) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iterations && c < d; ++i) {
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
  Maximum best{c, fc};
  if (fd > best.value) best = {d, fd};
  for (double edge : {lo, hi}) {
    const double fe = f(edge);
    if (fe > best.value) best = {edge, fe};
  }
  return best;
}

} // namespace cfmlab
