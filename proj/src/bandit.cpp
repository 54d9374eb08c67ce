#include "dpbound/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dpbound/kinf.hpp"
#include "dpbound/measures.hpp"
#include "dpbound/sums.hpp"

namespace dpbound::bandit {

Instance::Instance(int n, int m, std::vector<double> block_means)
    : n_(n), m_(m), means_(std::move(block_means)) {
  if (n <= 0 || m <= 0) throw std::invalid_argument("n and m must be positive");
  if (n % m != 0) throw std::invalid_argument("block width m must divide n");
  if (means_.size() != static_cast<std::size_t>(n / m))
    throw std::invalid_argument("expected n/m block means, got " + std::to_string(means_.size()));
  for (double p : means_) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("block means must lie in (0,1)");
  }
  if (*std::max_element(means_.begin(), means_.end()) != means_.front())
    throw std::invalid_argument("the first block must have the largest mean");
}

int Instance::worst_block() const {
  return static_cast<int>(std::min_element(means_.begin(), means_.end()) - means_.begin());
}

PolicyState::PolicyState(int n)
    : counts_(static_cast<std::size_t>(n), 0), successes_(static_cast<std::size_t>(n), 0) {}

PolicyState::PolicyState(std::vector<int> counts, std::vector<int> successes, long round)
    : counts_(std::move(counts)), successes_(std::move(successes)), round_(round) {
  if (counts_.size() != successes_.size())
    throw std::invalid_argument("counts and successes differ in length");
  if (round_ < 1) throw std::invalid_argument("round must be at least 1");
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    if (counts_[k] < 0 || successes_[k] < 0 || successes_[k] > counts_[k])
      throw std::invalid_argument("invalid arm statistics");
  }
}

double PolicyState::mean(int k) const {
  const int n = count(k);
  return n == 0 ? 0.0 : static_cast<double>(successes(k)) / n;
}

void PolicyState::observe(const Instance& inst, int block, const std::vector<int>& outcomes) {
  if (outcomes.size() != static_cast<std::size_t>(inst.m()))
    throw std::logic_error("semi-bandit feedback must cover exactly the chosen block");
  const int first = block * inst.m();
  for (int i = 0; i < inst.m(); ++i) {
    auto k = static_cast<std::size_t>(first + i);
    counts_[k] += 1;
    successes_[k] += outcomes[static_cast<std::size_t>(i)] != 0 ? 1 : 0;
  }
  ++round_;
}

Policy parse_policy(std::string_view name) {
  if (name == "cts") return Policy::kCts;
  if (name == "cucb") return Policy::kCucb;
  if (name == "escb") return Policy::kEscb;
  if (name == "oracle") return Policy::kOracle;
  if (name == "worst") return Policy::kWorst;
  throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

std::string_view policy_name(Policy p) {
  switch (p) {
    case Policy::kCts: return "cts";
    case Policy::kCucb: return "cucb";
    case Policy::kEscb: return "escb";
    case Policy::kOracle: return "oracle";
    case Policy::kWorst: return "worst";
  }
  return "?";
}

int argmax_lowest(const std::vector<double>& scores) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(scores.size()); ++i) {
    if (scores[static_cast<std::size_t>(i)] > scores[static_cast<std::size_t>(best)]) best = i;
  }
  return best;
}

std::vector<double> cts_samples(const PolicyState& state, Rng& rng) {
  std::vector<double> theta(static_cast<std::size_t>(state.arms()));
  for (int k = 0; k < state.arms(); ++k) {
    const double s = state.successes(k);
    const double f = state.count(k) - state.successes(k);
    theta[static_cast<std::size_t>(k)] = beta_variate(1.0 + s, 1.0 + f, rng);
  }
  return theta;
}

int best_block(const Instance& inst, const std::vector<double>& arm_scores) {
  std::vector<double> sums(static_cast<std::size_t>(inst.blocks()), 0.0);
  for (int k = 0; k < inst.n(); ++k)
    sums[static_cast<std::size_t>(inst.block_of(k))] += arm_scores[static_cast<std::size_t>(k)];
  return argmax_lowest(sums);
}

int cts_step(const Instance& inst, const PolicyState& state, Rng& rng) {
  return best_block(inst, cts_samples(state, rng));
}

std::vector<double> cucb_kl_arm_indices(const PolicyState& state) {
  const double log_t = std::log(static_cast<double>(state.round()));
  std::vector<double> idx(static_cast<std::size_t>(state.arms()));
  for (int k = 0; k < state.arms(); ++k) {
    const int n = state.count(k);
    idx[static_cast<std::size_t>(k)] =
        n == 0 ? 1.0 : kinf_inverse(WeightedValues::bernoulli(state.mean(k)), log_t / n);
  }
  return idx;
}

int cucb_kl_step(const Instance& inst, const PolicyState& state) {
  return best_block(inst, cucb_kl_arm_indices(state));
}

double escb_delta(long t) {
  const double lt = std::log(static_cast<double>(t) + 1.0);
  return 1.0 / (static_cast<double>(t) * lt * lt);
}

std::vector<double> escb_kl_block_indices(const Instance& inst, const PolicyState& state) {
  const double delta = escb_delta(state.round());
  std::vector<double> idx(static_cast<std::size_t>(inst.blocks()));
  for (int j = 0; j < inst.blocks(); ++j) {
    std::vector<DPSpec> parts;
    double mean_sum = 0.0;
    bool unobserved = false;
    for (int i = 0; i < inst.m(); ++i) {
      const int k = j * inst.m() + i;
      if (state.count(k) == 0) {
        unobserved = true;
        break;
      }
      parts.emplace_back(static_cast<double>(state.count(k)),
                         WeightedValues::bernoulli(state.mean(k)));
      mean_sum += state.mean(k);
    }
    auto& out = idx[static_cast<std::size_t>(j)];
    if (unobserved) {
      out = inst.m();
    } else if (delta >= 1.0) {
      // No divergence budget: only the empirical measures are admissible.
      out = mean_sum;
    } else {
      out = region_radius(SumSpec(std::move(parts)), delta).radius;
    }
  }
  return idx;
}

int escb_kl_step(const Instance& inst, const PolicyState& state) {
  return argmax_lowest(escb_kl_block_indices(inst, state));
}

RegretTrace run_single(const Instance& inst, Policy policy, long horizon, std::uint64_t seed) {
  Rng rng(seed);
  PolicyState state(inst.n());
  RegretTrace trace;
  trace.actions.reserve(static_cast<std::size_t>(horizon));
  trace.cum_regret.reserve(static_cast<std::size_t>(horizon));
  const double best = inst.block_means().front();
  const int worst = inst.worst_block();
  std::vector<int> outcomes(static_cast<std::size_t>(inst.m()));
  double regret = 0.0;
  for (long t = 1; t <= horizon; ++t) {
    int block = 0;
    switch (policy) {
      case Policy::kCts: block = cts_step(inst, state, rng); break;
      case Policy::kCucb: block = cucb_kl_step(inst, state); break;
      case Policy::kEscb: block = escb_kl_step(inst, state); break;
      case Policy::kOracle: block = 0; break;
      case Policy::kWorst: block = worst; break;
    }
    const double p = inst.block_means()[static_cast<std::size_t>(block)];
    for (auto& o : outcomes) o = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
    state.observe(inst, block, outcomes);
    regret += inst.m() * (best - p);
    trace.actions.push_back(block);
    trace.cum_regret.push_back(regret);
  }
  return trace;
}

std::vector<RegretTrace> run_experiment(const Instance& inst, Policy policy, long horizon,
                                        int reps, std::uint64_t seed) {
  if (horizon < 1 || reps < 1) throw std::invalid_argument("horizon and reps must be positive");
  std::vector<RegretTrace> traces;
  traces.reserve(static_cast<std::size_t>(reps));
  for (int r = 0; r < reps; ++r)
    traces.push_back(run_single(inst, policy, horizon, derive_seed(seed, static_cast<std::uint64_t>(r))));
  return traces;
}

double lower_bound_constant(const Instance& inst) {
  const auto& p = inst.block_means();
  double c = 0.0;
  for (std::size_t j = 1; j < p.size(); ++j) {
    if (p[j] == p[0]) throw std::invalid_argument("lower bound constant needs a unique best block");
    c += (p[0] - p[j]) / kl_bernoulli(p[j], p[0]);
  }
  return c;
}

}  // namespace dpbound::bandit
