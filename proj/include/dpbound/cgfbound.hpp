#pragma once

#include "dpbound/measures.hpp"

namespace dpbound {

/// sup over nu of E_nu[f] - alpha KL(base || nu), with its optimizer.
struct CgfBoundResult {
  double value = 0.0;
  /// Dual variable c of the normalization constraint, in [v_max, v_max + alpha].
  double c_star = 0.0;
  /// Mass the optimizer places on the largest value beyond alpha p / (c - v).
  /// Nonzero only when c_star == v_max.
  double boundary_mass = 0.0;
  /// KL(base || witness).
  double divergence = 0.0;
  WeightedValues witness = WeightedValues::point_mass(0.0);
};

/// Upper bound on log E[exp(E_X[f])] for X ~ DP(alpha base), computed as
/// min over c in [v_max, v_max + alpha] of
///   c - alpha + alpha * sum_i p_i log(alpha / (c - v_i)).
CgfBoundResult cgf_bound(const DPSpec& dp);

/// cgf_bound for the payoff lambda (f - u). Zero at lambda = 0; throws
/// std::invalid_argument for negative lambda.
double cgf_bound_scaled(const DPSpec& dp, double lambda, double u);

/// Exact log-MGF of the Gamma process with shape alpha base:
///   -alpha * sum_i p_i log(1 - v_i).
/// Requires every value <= 1 and no base mass at exactly 1.
double gamma_log_mgf(const DPSpec& dp);

/// min over lambda in [0, 1/(v_max - u)] of gamma_log_mgf for the payoff
/// lambda (f - u), found by golden-section search. For u in (mean, v_max)
/// this is -alpha Kinf(base, u).
double gamma_chernoff(const DPSpec& dp, double u);

/// P(E_X[f] >= u) <= exp(-alpha Kinf(base, u)).
double tail_bound_single(const DPSpec& dp, double u);

/// Closed-form bound on the centered CGF of Beta(a, b):
///   max over s in [a/(a+b), 1] of lambda (s - a/(a+b)) - (a+b) kl(a/(a+b), s).
double beta_cgf_bound(double a, double b, double lambda);

/// Maximizer s of the Beta bound above.
double beta_cgf_maximizer(double a, double b, double lambda);

}  // namespace dpbound
