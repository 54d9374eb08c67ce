#pragma once

#include <vector>

#include "dpbound/measures.hpp"

namespace dpbound {

/// Independent X_j ~ DP(alpha_j nu_j), each with its own payoff f_j carried
/// in the base values.
struct SumSpec {
  explicit SumSpec(std::vector<DPSpec> components);

  std::vector<DPSpec> components;

  double sum_means() const;
  double sum_vmax() const;
};

struct RegionResult {
  /// sup of sum_j E_{mu_j}[f_j] subject to sum_j alpha_j KL(nu_j || mu_j) <= log(1/delta).
  double radius = 0.0;
  /// Outer multiplier of the divergence budget.
  double lambda_star = 0.0;
  /// Set when the minimum sits at lambda = 0 (every component is the point
  /// mass at its own v_max).
  bool trivial = false;
  std::vector<WeightedValues> witnesses;
};

/// Confidence radius for sum_j E_{X_j}[f_j] at level delta in (0, 1), from
/// min over lambda >= 0 of lambda log(1/delta) + sum_j S_j(lambda), where
/// S_j(lambda) = sup_mu E_mu[f_j] - lambda alpha_j KL(nu_j || mu).
RegionResult region_radius(const SumSpec& spec, double delta);

/// exp(-inf { sum_j alpha_j Kinf_j(u_j) : sum_j u_j = u }).
double sum_tail_bound(const SumSpec& spec, double u);

/// Minimizing (u_j) of the infimum above. Throws std::invalid_argument unless
/// sum of means <= u <= sum of v_max.
std::vector<double> optimal_split(const SumSpec& spec, double u);

/// sum_j alpha_j Kinf_j(u_j).
double split_exponent(const SumSpec& spec, const std::vector<double>& split);

}  // namespace dpbound
