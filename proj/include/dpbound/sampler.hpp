#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "dpbound/measures.hpp"

namespace dpbound {

using Rng = std::mt19937_64;

/// One realization X of a DP, as (value, weight) pairs.
struct DPSample {
  /// Exact sampling: aligned with the base atoms. Stick-breaking: one entry
  /// per stick in draw order, values may repeat.
  std::vector<Atom> atoms;
  /// Stick mass still unassigned when the truncation stopped, before it was
  /// handed to the final draw. Zero for exact samples.
  double residual = 0.0;

  /// E_X[f].
  double expectation() const;
  /// X({atom values v : v in [lo, hi]}).
  double mass_in(double lo, double hi) const;
};

/// log of a Gamma(shape, 1) variate. Stays finite for tiny shapes where the
/// variate itself underflows.
double log_gamma_variate(double shape, Rng& rng);

/// Beta(a, b) variate via two Gamma draws.
double beta_variate(double a, double b, Rng& rng);

/// Dirichlet(alpha p_1, ..., alpha p_k) over the positive-weight atoms;
/// zero-weight atoms get weight 0.
DPSample sample_exact(const DPSpec& dp, Rng& rng);

/// Stick-breaking with (omega_k, beta_k) iid from base x Beta(1, alpha),
/// stopped once the unbroken stick is below `residual_tol`; the remainder goes
/// to one more draw from the base.
DPSample sample_stick_breaking(const DPSpec& dp, Rng& rng, double residual_tol);

/// E[prod_l X(A_l)] for nested A_1 ⊂ ... ⊂ A_m given their base masses
/// a_l = nu0(A_l):  prod_l (alpha a_l + l - 1) / (alpha + l - 1).
/// Throws std::invalid_argument if the masses decrease or leave [0, 1].
double moment_nested(double alpha, std::span<const double> masses);

/// E[prod_{l in S} X(A_l)] for the subset S of nested sets encoded as a bit
/// mask over `masses` (bit l selects A_{l+1}).
double subset_moment(double alpha, std::span<const double> masses, std::uint32_t subset);

struct MomentPair {
  double q;
  double r;
};

/// Moment-level superadditivity terms for k nested sets:
///   Q_k = sum_S alpha^|S| beta^(k-|S|) T(alpha, S) T(beta, [k] \ S),
///   R_k = (alpha + beta)^k T(alpha + beta, [k]).
/// The masses are sorted ascending first, so index order matches set
/// inclusion. Requires 1 <= k <= 20 and masses.size() == k.
MomentPair qk_rk(double alpha, double beta, std::span<const double> masses, int k);

struct SplitMax {
  double z_star;
  double value;
};

/// h(z) = (s x + z) s / (s + z) + (t x + j - z) t / (t + j - z).
double concave_split_objective(double s, double t, double j, double x, double z);

/// max over z in [0, j] of h, attained at z = j s / (s + t).
SplitMax concave_split_max(double s, double t, double j, double x);

struct McEstimate {
  double estimate;
  double std_error;
};

/// log of the sample mean of exp(E_X[f]) over n exact draws, with a
/// delta-method standard error.
McEstimate mc_log_mgf(const DPSpec& dp, int n, Rng& rng);

/// Fraction of n exact draws with E_X[f] >= u, and its binomial standard error.
McEstimate mc_tail(const DPSpec& dp, double u, int n, Rng& rng);

/// Importance-sampled P(E_X[f] >= u): draws from DP(alpha q) where q is the
/// Kinf minimizer at u, reweighted by the Dirichlet likelihood ratio. Falls
/// back to mc_tail when u <= mean or the minimizer leaves the base support.
McEstimate mc_tail_tilted(const DPSpec& dp, double u, int n, Rng& rng);

/// Seed for replication `index` of a run seeded with `seed` (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace dpbound
