#include "dpbound/sums.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dpbound/cgfbound.hpp"
#include "dpbound/kinf.hpp"
#include "dpbound/scalar_solvers.hpp"

namespace dpbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSplitTol = 1e-10;
constexpr int kMaxDoublings = 1100;

bool is_top_point_mass(const WeightedValues& base) { return base.mass_at_max() == 1.0; }

struct OuterDual {
  const SumSpec& spec;
  double budget;

  // Value and derivative of lambda -> lambda * budget + sum_j S_j(lambda).
  struct Eval {
    double value;
    double slope;
    std::vector<CgfBoundResult> parts;
  };

  Eval eval(double lambda, bool keep_parts = false) const {
    Eval e{lambda * budget, budget, {}};
    for (const auto& c : spec.components) {
      if (lambda == 0.0) {
        e.value += c.base.v_max();
        if (!is_top_point_mass(c.base)) e.slope = -kInf;
        if (keep_parts) {
          CgfBoundResult r;
          r.value = c.base.v_max();
          r.c_star = c.base.v_max();
          r.boundary_mass = 1.0 - c.base.mass_at_max();
          r.divergence = is_top_point_mass(c.base) ? 0.0 : kInf;
          r.witness = WeightedValues::point_mass(c.base.v_max());
          e.parts.push_back(std::move(r));
        }
        continue;
      }
      auto r = cgf_bound(DPSpec(lambda * c.alpha, c.base));
      e.value += r.value;
      e.slope -= c.alpha * r.divergence;
      if (keep_parts) e.parts.push_back(std::move(r));
    }
    return e;
  }
};

// sup { x in [mean, v_max) : alpha * kinf_slope(x) <= eta }.
double inverse_slope(const DPSpec& c, double eta) {
  const double lo = c.base.mean();
  const double hi = c.base.v_max();
  if (lo >= hi) return hi;
  if (eta <= 0.0) return lo;
  auto bracket = scalar::bisect_sign(
      [&](double x) { return c.alpha * kinf(c.base, x).lambda_star <= eta; }, lo, hi,
      kSplitTol);
  return bracket.first;
}

double split_total(const SumSpec& spec, double eta, std::vector<double>& out) {
  out.resize(spec.components.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = inverse_slope(spec.components[j], eta);
  return std::accumulate(out.begin(), out.end(), 0.0);
}

}  // namespace

SumSpec::SumSpec(std::vector<DPSpec> components_) : components(std::move(components_)) {
  if (components.empty()) throw std::invalid_argument("sum needs at least one component");
}

double SumSpec::sum_means() const {
  double s = 0.0;
  for (const auto& c : components) s += c.base.mean();
  return s;
}

double SumSpec::sum_vmax() const {
  double s = 0.0;
  for (const auto& c : components) s += c.base.v_max();
  return s;
}

RegionResult region_radius(const SumSpec& spec, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
  OuterDual dual{spec, -std::log(delta)};

  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < kMaxDoublings && dual.eval(hi).slope < 0.0; ++i) {
    lo = hi;
    hi *= 2.0;
  }

  auto gs = scalar::golden_section([&](double l) { return dual.eval(l).value; }, lo, hi,
                                   1e-10);
  // Golden section stalls once values agree to rounding; finish on the
  // envelope derivative, which changes sign exactly at the optimum.
  auto slope_negative = [&](double l) { return dual.eval(l).slope < 0.0; };
  const double width = gs.hi - gs.lo;
  double a = std::max(lo, gs.lo - width);
  double b = std::min(hi, gs.hi + width);
  if (!slope_negative(a)) a = lo;
  if (slope_negative(b)) b = hi;
  double lambda;
  if (!slope_negative(a)) {
    lambda = a;
  } else if (slope_negative(b)) {
    lambda = b;
  } else {
    // The right end has a nonnegative slope, so its witnesses meet the budget.
    lambda = scalar::bisect_sign(slope_negative, a, b, 0.0).second;
  }
  auto e = dual.eval(lambda, true);

  RegionResult r;
  r.lambda_star = lambda;
  r.trivial = lambda == 0.0;
  r.radius = e.value;
  for (auto& p : e.parts) r.witnesses.push_back(std::move(p.witness));
  return r;
}

std::vector<double> optimal_split(const SumSpec& spec, double u) {
  if (!std::isfinite(u)) throw std::invalid_argument("threshold u must be finite");
  const double lo_total = spec.sum_means();
  const double hi_total = spec.sum_vmax();
  if (u < lo_total || u > hi_total)
    throw std::invalid_argument("u must lie between the sum of means and the sum of maxima");

  std::vector<double> split(spec.components.size());
  if (u == lo_total) {
    for (std::size_t j = 0; j < split.size(); ++j) split[j] = spec.components[j].base.mean();
    return split;
  }
  if (u == hi_total) {
    for (std::size_t j = 0; j < split.size(); ++j) split[j] = spec.components[j].base.v_max();
    return split;
  }

  std::vector<double> scratch;
  double eta_lo = 0.0, eta_hi = 1.0;
  for (int i = 0; i < kMaxDoublings && split_total(spec, eta_hi, scratch) < u; ++i) {
    eta_lo = eta_hi;
    eta_hi *= 2.0;
  }
  for (int it = 0; it < 200; ++it) {
    double mid = eta_lo + 0.5 * (eta_hi - eta_lo);
    if (mid <= eta_lo || mid >= eta_hi) break;
    if (split_total(spec, mid, scratch) < u) {
      eta_lo = mid;
    } else {
      eta_hi = mid;
    }
    if (eta_hi - eta_lo <= 1e-14 * eta_hi) break;
  }
  split_total(spec, eta_lo, split);

  // Hand the leftover to the components with the most room, largest
  // alpha_j (v_max_j - u_j) first.
  double residual = u - std::accumulate(split.begin(), split.end(), 0.0);
  std::vector<std::size_t> order(split.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto headroom = [&](std::size_t j) {
    const auto& c = spec.components[j];
    return c.alpha * (c.base.v_max() - split[j]);
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return headroom(x) > headroom(y); });
  for (std::size_t j : order) {
    if (residual == 0.0) break;
    const double room = spec.components[j].base.v_max() - split[j];
    const double lower = spec.components[j].base.mean() - split[j];
    const double take = std::clamp(residual, lower, room);
    split[j] += take;
    residual -= take;
  }
  return split;
}

double split_exponent(const SumSpec& spec, const std::vector<double>& split) {
  if (split.size() != spec.components.size())
    throw std::invalid_argument("split size does not match the number of components");
  double s = 0.0;
  for (std::size_t j = 0; j < split.size(); ++j) {
    double k = kinf(spec.components[j].base, split[j]).value;
    if (std::isinf(k)) return kInf;
    s += spec.components[j].alpha * k;
  }
  return s;
}

double sum_tail_bound(const SumSpec& spec, double u) {
  if (!std::isfinite(u)) throw std::invalid_argument("threshold u must be finite");
  if (u <= spec.sum_means()) return 1.0;
  if (u > spec.sum_vmax()) return 0.0;
  double exponent = split_exponent(spec, optimal_split(spec, u));
  if (std::isinf(exponent)) return 0.0;
  return std::exp(-exponent);
}

}  // namespace dpbound
