#pragma once

#include "dpbound/measures.hpp"

namespace dpbound {

/// Solution of Kinf(nu, u) = inf { KL(nu || mu) : E_mu[f] >= u }.
struct KinfResult {
  double value = 0.0;
  /// Maximizer of lambda -> E_nu[log(1 - lambda (f - u))] on
  /// [0, 1/(v_max - u)]. +inf when the constraint set is empty.
  double lambda_star = 0.0;
  /// True when lambda_star sits on the right end 1/(v_max - u).
  bool at_boundary = false;
  /// E_nu[1 / (1 - lambda_star (f - u))]; at most one.
  double diagnostic = 1.0;
};

/// Kinf through its one-dimensional concave dual. Zero for u <= mean, +inf for
/// u >= v_max unless the base is the point mass at v_max.
KinfResult kinf(const WeightedValues& base, double u);

/// dKinf/du, which equals lambda_star. Throws std::invalid_argument unless
/// v_min <= u < v_max.
double kinf_slope(const WeightedValues& base, double u);

/// Largest u in [mean, v_max] with Kinf(base, u) <= budget (bisection, absolute
/// tolerance 1e-10 in u).
double kinf_inverse(const WeightedValues& base, double budget);

}  // namespace dpbound
