#pragma once

#include <span>
#include <vector>

namespace dpbound {

struct Atom {
  double value = 0.0;
  double weight = 0.0;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite probability measure stored through the payoff it induces.
///
/// Each atom carries the payoff value f(x) of a point of the ambient space
/// together with its base-measure weight. Values are strictly increasing and
/// weights sum to one. Zero-weight atoms are kept: they mark points of the
/// ambient space where the base measure has no mass but where optimizers are
/// still allowed to move mass.
class WeightedValues {
 public:
  /// Sorts, merges equal values and renormalizes. Throws std::invalid_argument
  /// on empty input, negative or non-finite weights, non-finite values, or
  /// zero total weight.
  static WeightedValues canonicalize(std::vector<Atom> raw);

  /// Point mass at `value`.
  static WeightedValues point_mass(double value);

  /// Bernoulli(p) on the ambient set {0, 1}; both atoms are always present.
  static WeightedValues bernoulli(double p);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  const Atom& operator[](std::size_t i) const { return atoms_[i]; }

  double v_min() const { return atoms_.front().value; }
  double v_max() const { return atoms_.back().value; }
  /// Weight sitting on the largest value.
  double mass_at_max() const { return atoms_.back().weight; }
  double mean() const;

  /// Same weights, values mapped through v -> scale * (v - shift). Requires
  /// scale > 0 so the ordering is preserved.
  WeightedValues affine(double scale, double shift) const;

  friend bool operator==(const WeightedValues&, const WeightedValues&) = default;

 private:
  explicit WeightedValues(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}
  std::vector<Atom> atoms_;
};

/// DP(alpha * base) together with the payoff encoded in the base values.
struct DPSpec {
  DPSpec(double alpha, WeightedValues base);

  double alpha;
  WeightedValues base;
};

/// Bernoulli divergence kl(p || q) in nats, +inf when q is 0 or 1 and p
/// disagrees.
double kl_bernoulli(double p, double q);

/// KL(nu0 || nu) = sum over p_i > 0 of p_i log(p_i / q_i). Atoms of nu0 are
/// matched to atoms of nu by value; a missing value counts as q_i = 0.
double kl_discrete(const WeightedValues& nu0, const WeightedValues& nu);

}  // namespace dpbound
