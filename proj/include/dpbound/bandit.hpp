#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "dpbound/sampler.hpp"

namespace dpbound::bandit {

/// Semi-bandit over n Bernoulli base arms whose actions are the consecutive
/// blocks {0..m-1}, {m..2m-1}, ...; every arm of block j has mean p_j and
/// block 0 is optimal.
class Instance {
 public:
  Instance(int n, int m, std::vector<double> block_means);

  int n() const { return n_; }
  int m() const { return m_; }
  int blocks() const { return static_cast<int>(means_.size()); }
  const std::vector<double>& block_means() const { return means_; }
  double arm_mean(int k) const { return means_[static_cast<std::size_t>(k / m_)]; }
  int block_of(int k) const { return k / m_; }
  /// Block with the smallest mean, lowest index first.
  int worst_block() const;

 private:
  int n_;
  int m_;
  std::vector<double> means_;
};

/// Per-arm observation counts and success totals at the start of round t.
class PolicyState {
 public:
  explicit PolicyState(int n);
  PolicyState(std::vector<int> counts, std::vector<int> successes, long round);

  int arms() const { return static_cast<int>(counts_.size()); }
  int count(int k) const { return counts_[static_cast<std::size_t>(k)]; }
  int successes(int k) const { return successes_[static_cast<std::size_t>(k)]; }
  /// Empirical mean, 0 for an unobserved arm.
  double mean(int k) const;
  long round() const { return round_; }

  /// Records one outcome per arm of `block` and advances the round.
  void observe(const Instance& inst, int block, const std::vector<int>& outcomes);

 private:
  std::vector<int> counts_;
  std::vector<int> successes_;
  long round_ = 1;
};

enum class Policy { kCts, kCucb, kEscb, kOracle, kWorst };

/// Parses "cts", "cucb", "escb", "oracle" or "worst".
Policy parse_policy(std::string_view name);
std::string_view policy_name(Policy p);

/// Index of the largest entry, lowest index on ties.
int argmax_lowest(const std::vector<double>& scores);

/// Samples theta+_k ~ Beta(1 + S_k, 1 + N_k - S_k) for every arm.
std::vector<double> cts_samples(const PolicyState& state, Rng& rng);
/// Block maximizing the sum of the given per-arm scores.
int best_block(const Instance& inst, const std::vector<double>& arm_scores);

int cts_step(const Instance& inst, const PolicyState& state, Rng& rng);

/// Per-arm KL-UCB indices kinf_inverse(Ber(mean_k), log(t) / N_k); 1 when
/// N_k = 0.
std::vector<double> cucb_kl_arm_indices(const PolicyState& state);
int cucb_kl_step(const Instance& inst, const PolicyState& state);

/// Confidence level 1 / (t log^2(t + 1)).
double escb_delta(long t);
/// Per-block indices: region_radius over the block's arms with alpha_k = N_k
/// and base Ber(mean_k) at level escb_delta(t). A block with an unobserved arm
/// scores m.
std::vector<double> escb_kl_block_indices(const Instance& inst, const PolicyState& state);
int escb_kl_step(const Instance& inst, const PolicyState& state);

struct RegretTrace {
  std::vector<int> actions;
  std::vector<double> cum_regret;
};

/// `reps` independent runs of `horizon` rounds. Run r uses
/// derive_seed(seed, r), so traces do not depend on evaluation order.
std::vector<RegretTrace> run_experiment(const Instance& inst, Policy policy, long horizon,
                                        int reps, std::uint64_t seed);

RegretTrace run_single(const Instance& inst, Policy policy, long horizon, std::uint64_t seed);

/// sum_{j >= 2} (p_1 - p_j) / kl(p_j, p_1). Throws std::invalid_argument if a
/// suboptimal block ties with the best one.
double lower_bound_constant(const Instance& inst);

}  // namespace dpbound::bandit
