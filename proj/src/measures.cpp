#include "dpbound/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dpbound {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// x log(x / y) with 0 log(0 / y) = 0.
double xlogxy(double x, double y) {
  if (x == 0.0) return 0.0;
  if (y == 0.0) return kInf;
  return x * std::log(x / y);
}

}  // namespace

WeightedValues WeightedValues::canonicalize(std::vector<Atom> raw) {
  if (raw.empty()) throw std::invalid_argument("measure has no atoms");
  double total = 0.0;
  for (const auto& a : raw) {
    if (!std::isfinite(a.value))
      throw std::invalid_argument("atom value is not finite");
    if (!std::isfinite(a.weight))
      throw std::invalid_argument("atom weight is not finite");
    if (a.weight < 0.0)
      throw std::invalid_argument("negative atom weight " + std::to_string(a.weight));
    total += a.weight;
  }
  if (!(total > 0.0)) throw std::invalid_argument("measure has zero total weight");

  std::stable_sort(raw.begin(), raw.end(),
                   [](const Atom& a, const Atom& b) { return a.value < b.value; });
  std::vector<Atom> merged;
  merged.reserve(raw.size());
  for (const auto& a : raw) {
    if (!merged.empty() && merged.back().value == a.value) {
      merged.back().weight += a.weight;
    } else {
      merged.push_back(a);
    }
  }
  for (auto& a : merged) a.weight /= total;
  return WeightedValues(std::move(merged));
}

WeightedValues WeightedValues::point_mass(double value) {
  return canonicalize({{value, 1.0}});
}

WeightedValues WeightedValues::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli mean outside [0,1]");
  return WeightedValues({{0.0, 1.0 - p}, {1.0, p}});
}

double WeightedValues::mean() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.weight * a.value;
  return std::clamp(m, v_min(), v_max());
}

WeightedValues WeightedValues::affine(double scale, double shift) const {
  if (!(scale > 0.0)) throw std::invalid_argument("affine scale must be positive");
  std::vector<Atom> out(atoms_);
  for (auto& a : out) a.value = scale * (a.value - shift);
  // Distinct inputs can collide after scaling by a tiny factor.
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i].value > out[i - 1].value)) return canonicalize(std::move(out));
  }
  return WeightedValues(std::move(out));
}

DPSpec::DPSpec(double alpha_, WeightedValues base_)
    : alpha(alpha_), base(std::move(base_)) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("concentration alpha must be positive and finite");
}

double kl_bernoulli(double p, double q) {
  return xlogxy(p, q) + xlogxy(1.0 - p, 1.0 - q);
}

double kl_discrete(const WeightedValues& nu0, const WeightedValues& nu) {
  double kl = 0.0;
  auto other = nu.atoms();
  std::size_t j = 0;
  for (const auto& a : nu0.atoms()) {
    if (a.weight == 0.0) continue;
    while (j < other.size() && other[j].value < a.value) ++j;
    double q = (j < other.size() && other[j].value == a.value) ? other[j].weight : 0.0;
    kl += xlogxy(a.weight, q);
  }
  return std::max(kl, 0.0);
}

}  // namespace dpbound
