#include "dpbound/cgfbound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dpbound/kinf.hpp"
#include "dpbound/scalar_solvers.hpp"

namespace dpbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// The dual variable is parametrized as c = v_max + alpha - w with w in
// [0, alpha]. Then (c - v_i) / alpha = 1 + (d_i - w) / alpha with
// d_i = v_max - v_i, which keeps the large-alpha regime free of cancellation.
struct Dual {
  const WeightedValues& base;
  double alpha;
  double vmax;

  double rel(double d, double w) const { return (d - w) / alpha; }

  // g'(c) = 1 - sum p_i / (1 + rel_i) = sum p_i rel_i / (1 + rel_i); decreasing in w.
  double slope(double w) const {
    double s = 0.0;
    for (const auto& a : base.atoms()) {
      if (a.weight == 0.0) continue;
      const double r = rel(vmax - a.value, w);
      s += a.weight * r / (1.0 + r);
    }
    return s;
  }
};

// -alpha * sum p_i log(1 - scale (v_i - shift)); +inf outside the domain.
double gamma_log_mgf_affine(double alpha, const WeightedValues& base, double scale,
                            double shift) {
  double s = 0.0;
  for (const auto& a : base.atoms()) {
    if (a.weight == 0.0) continue;
    double t = scale * (a.value - shift);
    if (!(t < 1.0)) return kInf;
    s += a.weight * std::log1p(-t);
  }
  return -alpha * s;
}

}  // namespace

CgfBoundResult cgf_bound(const DPSpec& dp) {
  const auto& base = dp.base;
  const double alpha = dp.alpha;
  const double vmax = base.v_max();
  Dual dual{base, alpha, vmax};

  CgfBoundResult r;
  std::vector<Atom> witness(base.atoms().begin(), base.atoms().end());

  bool boundary = false;
  if (base.mass_at_max() == 0.0) {
    double s = 0.0;
    for (const auto& a : base.atoms()) {
      if (a.weight == 0.0) continue;
      s += a.weight / (vmax - a.value);
    }
    boundary = alpha * s <= 1.0;
  }

  if (boundary) {
    double value = vmax - alpha, div = 0.0, total = 0.0;
    for (auto& a : witness) {
      if (a.weight == 0.0) continue;
      double ratio = (vmax - a.value) / alpha;
      double log_ratio = std::log(ratio);
      value -= alpha * a.weight * log_ratio;
      div += a.weight * log_ratio;
      a.weight /= ratio;
      total += a.weight;
    }
    r.boundary_mass = std::max(0.0, 1.0 - total);
    witness.back().weight += r.boundary_mass;
    r.value = value;
    r.c_star = vmax;
    r.divergence = std::max(div, 0.0);
  } else {
    auto [lo, hi] = scalar::bisect_sign([&](double w) { return dual.slope(w) > 0.0; },
                                        0.0, alpha, 0.0);
    const double w = 0.5 * (lo + hi);
    // sum p log1p(rel) split into nonnegative second-order terms plus the
    // stationarity residual, which vanishes at the optimum.
    double div = dual.slope(w);
    for (auto& a : witness) {
      if (a.weight == 0.0) continue;
      double rel = dual.rel(vmax - a.value, w);
      div += a.weight * (std::log1p(rel) - rel / (1.0 + rel));
      a.weight /= 1.0 + rel;
    }
    r.value = (vmax - w) - alpha * div;
    r.c_star = vmax + alpha - w;
    r.divergence = std::max(div, 0.0);
  }
  r.witness = WeightedValues::canonicalize(std::move(witness));
  return r;
}

double cgf_bound_scaled(const DPSpec& dp, double lambda, double u) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");
  if (lambda == 0.0) return 0.0;
  return cgf_bound(DPSpec(dp.alpha, dp.base.affine(lambda, u))).value;
}

double gamma_log_mgf(const DPSpec& dp) {
  for (const auto& a : dp.base.atoms()) {
    if (a.value > 1.0) throw std::invalid_argument("Gamma-process MGF needs f <= 1");
    if (a.value == 1.0 && a.weight > 0.0)
      throw std::invalid_argument("Gamma-process MGF needs zero base mass where f = 1");
  }
  return gamma_log_mgf_affine(dp.alpha, dp.base, 1.0, 0.0);
}

double gamma_chernoff(const DPSpec& dp, double u) {
  if (!std::isfinite(u)) throw std::invalid_argument("threshold u must be finite");
  const auto& base = dp.base;
  if (u <= base.mean()) return 0.0;
  if (u >= base.v_max()) return -kInf;
  const double lambda_max = 1.0 / (base.v_max() - u);
  auto best = scalar::golden_section(
      [&](double lambda) { return gamma_log_mgf_affine(dp.alpha, base, lambda, u); },
      0.0, lambda_max, 1e-13);
  return best.value;
}

double tail_bound_single(const DPSpec& dp, double u) {
  double k = kinf(dp.base, u).value;
  if (std::isinf(k)) return 0.0;
  return std::exp(-dp.alpha * k);
}

double beta_cgf_maximizer(double a, double b, double lambda) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("Beta parameters must be positive");
  if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be nonnegative");
  const double n = a + b;
  if (lambda == 0.0) return a / n;
  // 1 - s is the small root of lambda r^2 - (lambda + n) r + b = 0.
  const double disc = std::sqrt((lambda - n) * (lambda - n) + 4.0 * lambda * a);
  const double r = 2.0 * b / ((lambda + n) + disc);
  return 1.0 - r;
}

double beta_cgf_bound(double a, double b, double lambda) {
  const double s = beta_cgf_maximizer(a, b, lambda);
  if (lambda == 0.0) return 0.0;
  const double n = a + b;
  const double p = a / n;
  const double disc = std::sqrt((lambda - n) * (lambda - n) + 4.0 * lambda * a);
  const double r = 2.0 * b / ((lambda + n) + disc);
  const double kl = p * std::log(p / s) + (1.0 - p) * std::log((1.0 - p) / r);
  const double value = lambda * ((b / n) - r) - n * kl;
  return std::max(value, 0.0);
}

}  // namespace dpbound
