#pragma once

#include <cmath>
#include <utility>

namespace dpbound::scalar {

/// Bisection on a monotone sign change. `positive(x)` is assumed true on a
/// prefix [lo, x*) and false afterwards. Returns the final bracket.
template <class Pred>
std::pair<double, double> bisect_sign(Pred&& positive, double lo, double hi,
                                      double abs_tol, int max_iter = 200) {
  for (int it = 0; it < max_iter && hi - lo > abs_tol; ++it) {
    double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (positive(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

struct MinimumResult {
  double x;
  double value;
  double lo;
  double hi;
};

/// Golden-section search for a unimodal function on [lo, hi]. The endpoints
/// are evaluated too, so minima sitting on the boundary are returned exactly.
template <class F>
MinimumResult golden_section(F&& f, double lo, double hi, double rel_tol = 1e-12,
                             int max_iter = 400) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter; ++it) {
    if (b - a <= rel_tol * (std::abs(a) + std::abs(b)) + 1e-300) break;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  MinimumResult best{c, fc, a, b};
  if (fd < best.value) best = {d, fd, a, b};
  double flo = f(lo), fhi = f(hi);
  if (flo < best.value) best = {lo, flo, a, b};
  if (fhi < best.value) best = {hi, fhi, a, b};
  return best;
}

}  // namespace dpbound::scalar
