#include "dpbound/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dpbound/kinf.hpp"

namespace dpbound {

namespace {

double open_unit(Rng& rng) {
  // (0, 1]
  return 1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

void check_masses(std::span<const double> masses) {
  for (double a : masses) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("set masses must lie in [0,1]");
  }
}

}  // namespace

double DPSample::expectation() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.weight * a.value;
  return s;
}

double DPSample::mass_in(double lo, double hi) const {
  double s = 0.0;
  for (const auto& a : atoms) {
    if (a.value >= lo && a.value <= hi) s += a.weight;
  }
  return s;
}

double log_gamma_variate(double shape, Rng& rng) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be positive");
  if (shape >= 1.0) return std::log(std::gamma_distribution<double>(shape, 1.0)(rng));
  // G(a) = G(a + 1) U^(1/a)
  double g = std::gamma_distribution<double>(shape + 1.0, 1.0)(rng);
  return std::log(g) + std::log(open_unit(rng)) / shape;
}

double beta_variate(double a, double b, Rng& rng) {
  double la = log_gamma_variate(a, rng);
  double lb = log_gamma_variate(b, rng);
  return 1.0 / (1.0 + std::exp(lb - la));
}

DPSample sample_exact(const DPSpec& dp, Rng& rng) {
  DPSample out;
  out.atoms.assign(dp.base.atoms().begin(), dp.base.atoms().end());
  double top = -std::numeric_limits<double>::infinity();
  std::vector<double> logs(out.atoms.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < out.atoms.size(); ++i) {
    if (out.atoms[i].weight == 0.0) continue;
    logs[i] = log_gamma_variate(dp.alpha * out.atoms[i].weight, rng);
    top = std::max(top, logs[i]);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < out.atoms.size(); ++i) {
    out.atoms[i].weight = std::exp(logs[i] - top);
    total += out.atoms[i].weight;
  }
  for (auto& a : out.atoms) a.weight /= total;
  return out;
}

DPSample sample_stick_breaking(const DPSpec& dp, Rng& rng, double residual_tol) {
  if (!(residual_tol > 0.0 && residual_tol < 1.0))
    throw std::invalid_argument("residual tolerance must lie in (0,1)");
  const auto atoms = dp.base.atoms();
  std::vector<double> weights;
  weights.reserve(atoms.size());
  for (const auto& a : atoms) weights.push_back(a.weight);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());

  DPSample out;
  double remaining = 1.0;
  while (true) {
    double value = atoms[pick(rng)].value;
    // Beta(1, alpha) by inversion: 1 - (1 - U)^(1/alpha).
    double log_keep = std::log1p(-std::uniform_real_distribution<double>(0.0, 1.0)(rng)) / dp.alpha;
    double piece = -remaining * std::expm1(log_keep);
    out.atoms.push_back({value, piece});
    remaining *= std::exp(log_keep);
    if (remaining < residual_tol) break;
  }
  out.residual = remaining;
  out.atoms.push_back({atoms[pick(rng)].value, remaining});
  return out;
}

double moment_nested(double alpha, std::span<const double> masses) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  check_masses(masses);
  if (!std::is_sorted(masses.begin(), masses.end()))
    throw std::invalid_argument("nested set masses must be nondecreasing");
  double prod = 1.0;
  for (std::size_t l = 0; l < masses.size(); ++l) {
    const double shift = static_cast<double>(l);
    prod *= l == 0 ? masses[0] : (alpha * masses[l] + shift) / (alpha + shift);
  }
  return prod;
}

double subset_moment(double alpha, std::span<const double> masses, std::uint32_t subset) {
  double prod = 1.0;
  double shift = 0.0;
  for (std::size_t l = 0; l < masses.size(); ++l) {
    if (!(subset >> l & 1u)) continue;
    prod *= shift == 0.0 ? masses[l] : (alpha * masses[l] + shift) / (alpha + shift);
    shift += 1.0;
  }
  return prod;
}

MomentPair qk_rk(double alpha, double beta, std::span<const double> masses, int k) {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw std::invalid_argument("alpha and beta must be positive");
  if (k < 1 || k > 20) throw std::invalid_argument("k must lie in [1, 20]");
  if (masses.size() != static_cast<std::size_t>(k))
    throw std::invalid_argument("expected exactly k set masses");
  check_masses(masses);
  std::vector<double> sorted(masses.begin(), masses.end());
  std::sort(sorted.begin(), sorted.end());

  const std::uint32_t full = (std::uint32_t{1} << k) - 1;
  double q = 0.0;
  for (std::uint32_t s = 0; s <= full; ++s) {
    const int size = std::popcount(s);
    q += std::pow(alpha, size) * std::pow(beta, k - size) * subset_moment(alpha, sorted, s) *
         subset_moment(beta, sorted, full & ~s);
  }
  const double r = std::pow(alpha + beta, k) * subset_moment(alpha + beta, sorted, full);
  return {q, r};
}

double concave_split_objective(double s, double t, double j, double x, double z) {
  return (s * x + z) * s / (s + z) + (t * x + j - z) * t / (t + j - z);
}

SplitMax concave_split_max(double s, double t, double j, double x) {
  if (!(s > 0.0) || !(t > 0.0) || !(j > 0.0))
    throw std::invalid_argument("s, t and j must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("x must lie in [0,1]");
  return {j * s / (s + t), (s + t) * ((s + t) * x + j) / (s + t + j)};
}

McEstimate mc_log_mgf(const DPSpec& dp, int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("need at least one sample");
  std::vector<double> ys(static_cast<std::size_t>(n));
  for (auto& y : ys) y = sample_exact(dp, rng).expectation();
  const double top = *std::max_element(ys.begin(), ys.end());
  double sum = 0.0, sum_sq = 0.0;
  for (double y : ys) {
    double w = std::exp(y - top);
    sum += w;
    sum_sq += w * w;
  }
  const double mean = sum / n;
  double se = std::numeric_limits<double>::infinity();
  if (n > 1) {
    double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1));
    se = std::sqrt(var / n) / mean;
  }
  return {top + std::log(mean), se};
}

McEstimate mc_tail(const DPSpec& dp, double u, int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("need at least one sample");
  long hits = 0;
  for (int i = 0; i < n; ++i) {
    if (sample_exact(dp, rng).expectation() >= u) ++hits;
  }
  const double p = static_cast<double>(hits) / n;
  return {p, std::sqrt(p * (1.0 - p) / n)};
}

McEstimate mc_tail_tilted(const DPSpec& dp, double u, int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("need at least one sample");
  const auto& base = dp.base;
  const auto k = kinf(base, u);
  if (u <= base.mean() || k.at_boundary || !std::isfinite(k.value)) return mc_tail(dp, u, n, rng);

  // Proposal DP(alpha q) with q the minimizer of KL(base || q) under E_q[f] >= u.
  std::vector<double> p, q, v;
  for (const auto& a : base.atoms()) {
    if (a.weight == 0.0) continue;
    p.push_back(a.weight);
    q.push_back(a.weight / (1.0 - k.lambda_star * (a.value - u)));
    v.push_back(a.value);
  }
  const double q_total = std::accumulate(q.begin(), q.end(), 0.0);
  for (auto& x : q) x /= q_total;
  double log_norm = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    log_norm += std::lgamma(dp.alpha * q[i]) - std::lgamma(dp.alpha * p[i]);

  std::vector<double> logs(p.size());
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < n; ++s) {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < p.size(); ++i) {
      logs[i] = log_gamma_variate(dp.alpha * q[i], rng);
      top = std::max(top, logs[i]);
    }
    double total = 0.0;
    for (double l : logs) total += std::exp(l - top);
    const double log_total = top + std::log(total);
    double mean = 0.0, log_ratio = log_norm;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double log_x = logs[i] - log_total;
      mean += std::exp(log_x) * v[i];
      log_ratio += dp.alpha * (p[i] - q[i]) * log_x;
    }
    if (mean < u) continue;
    const double w = std::exp(log_ratio);
    sum += w;
    sum_sq += w * w;
  }
  const double est = sum / n;
  return {est, std::sqrt(std::max(0.0, sum_sq / n - est * est) / n)};
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace dpbound
