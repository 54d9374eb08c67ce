#include "dpbound/kinf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dpbound/scalar_solvers.hpp"

namespace dpbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLambdaTol = 1e-12;
constexpr double kInverseTol = 1e-10;

void require_finite(double u) {
  if (!std::isfinite(u)) throw std::invalid_argument("threshold u must be finite");
}

// Derivative of lambda -> sum_i p_i log(1 - lambda (v_i - u)).
double dual_slope(const WeightedValues& base, double u, double lambda) {
  double s = 0.0;
  for (const auto& a : base.atoms()) {
    if (a.weight == 0.0) continue;
    s += a.weight * (u - a.value) / (1.0 - lambda * (a.value - u));
  }
  return s;
}

}  // namespace

KinfResult kinf(const WeightedValues& base, double u) {
  require_finite(u);
  if (u <= base.mean()) return {};

  const double vmax = base.v_max();
  if (u >= vmax) return {kInf, kInf, true, 0.0};

  const double gap = vmax - u;
  const double lambda_max = 1.0 / gap;

  KinfResult r;
  if (base.mass_at_max() == 0.0) {
    // Slope at the right end, written with the (v_max - v_i) factors so that
    // it stays accurate for u close to v_max.
    double end_slope = 0.0;
    for (const auto& a : base.atoms()) {
      if (a.weight == 0.0) continue;
      end_slope += a.weight * (u - a.value) / (vmax - a.value);
    }
    if (end_slope >= 0.0) {
      r.lambda_star = lambda_max;
      r.at_boundary = true;
      double value = 0.0, diag = 0.0;
      for (const auto& a : base.atoms()) {
        if (a.weight == 0.0) continue;
        double ratio = (vmax - a.value) / gap;
        value += a.weight * std::log(ratio);
        diag += a.weight / ratio;
      }
      r.value = std::max(value, 0.0);
      r.diagnostic = diag;
      return r;
    }
  }

  auto [lo, hi] = scalar::bisect_sign(
      [&](double lambda) { return dual_slope(base, u, lambda) > 0.0; }, 0.0,
      lambda_max, kLambdaTol);
  const double lambda = 0.5 * (lo + hi);
  double value = 0.0, diag = 0.0;
  for (const auto& a : base.atoms()) {
    if (a.weight == 0.0) continue;
    double t = lambda * (a.value - u);
    value += a.weight * std::log1p(-t);
    diag += a.weight / (1.0 - t);
  }
  r.lambda_star = lambda;
  r.value = std::max(value, 0.0);
  r.diagnostic = diag;
  return r;
}

double kinf_slope(const WeightedValues& base, double u) {
  require_finite(u);
  if (u < base.v_min() || u >= base.v_max())
    throw std::invalid_argument("kinf_slope requires v_min <= u < v_max");
  return kinf(base, u).lambda_star;
}

double kinf_inverse(const WeightedValues& base, double budget) {
  if (!(budget >= 0.0)) throw std::invalid_argument("budget must be nonnegative");
  const double lo = base.mean();
  const double hi = base.v_max();
  if (kinf(base, hi).value <= budget) return hi;
  if (budget == 0.0) return lo;
  auto bracket = scalar::bisect_sign(
      [&](double u) { return kinf(base, u).value <= budget; }, lo, hi, kInverseTol);
  return bracket.first;
}

}  // namespace dpbound
