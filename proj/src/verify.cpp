#include "dpbound/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "dpbound/cgfbound.hpp"
#include "dpbound/kinf.hpp"
#include "dpbound/sampler.hpp"
#include "dpbound/scalar_solvers.hpp"
#include "dpbound/sums.hpp"

namespace dpbound::verify {

using nlohmann::json;

namespace {

Check upper(std::string name, double value, double threshold) {
  return {std::move(name), value <= threshold, value, threshold, threshold - value};
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

WeightedValues random_base(Rng& rng, int max_atoms) {
  const int k = std::uniform_int_distribution<int>(2, max_atoms)(rng);
  std::vector<Atom> atoms;
  for (int i = 0; i < k; ++i) {
    bool ambient = i > 0 && uniform(rng, 0.0, 1.0) < 0.2;
    atoms.push_back({uniform(rng, -1.0, 2.0), ambient ? 0.0 : uniform(rng, 0.05, 1.0)});
  }
  return WeightedValues::canonicalize(std::move(atoms));
}

WeightedValues half_half() { return WeightedValues::canonicalize({{0.0, 0.5}, {1.0, 0.5}}); }

// min over lambda >= 0 of cgf_bound_scaled(dp, lambda, u).
double scaled_bound_minimum(const DPSpec& dp, double u) {
  auto f = [&](double l) { return cgf_bound_scaled(dp, l, u); };
  double hi = 1.0;
  while (f(2.0 * hi) < f(hi) && hi < 1e12) hi *= 2.0;
  return scalar::golden_section(f, 0.0, 2.0 * hi, 1e-14).value;
}

Report moments_suite(const Options& o) {
  Report rep{"moments", {}};
  Rng rng(o.seed);
  const int n = o.samples.value_or(100000);
  const double sigmas = o.tol.value_or(3.0);
  for (int cfg = 0; cfg < 20; ++cfg) {
    const int k = std::uniform_int_distribution<int>(3, 6)(rng);
    std::vector<Atom> atoms;
    for (int i = 0; i < k; ++i) atoms.push_back({static_cast<double>(i), uniform(rng, 0.1, 1.0)});
    DPSpec dp(log_uniform(rng, 0.3, 10.0), WeightedValues::canonicalize(std::move(atoms)));
    const int m = std::uniform_int_distribution<int>(1, 4)(rng);
    // Nested sets are prefixes {0, ..., c_l - 1} of the atoms.
    std::vector<int> cuts;
    for (int l = 0; l < m; ++l) cuts.push_back(std::uniform_int_distribution<int>(1, k - 1)(rng));
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> masses;
    for (int c : cuts) {
      double s = 0.0;
      for (int i = 0; i < c; ++i) s += dp.base[static_cast<std::size_t>(i)].weight;
      masses.push_back(std::min(s, 1.0));
    }
    const double exact = moment_nested(dp.alpha, masses);
    double sum = 0.0, sum_sq = 0.0;
    for (int s = 0; s < n; ++s) {
      auto x = sample_exact(dp, rng);
      double prod = 1.0;
      for (int c : cuts) prod *= x.mass_in(-0.5, c - 0.5);
      sum += prod;
      sum_sq += prod * prod;
    }
    const double mean = sum / n;
    const double se = std::sqrt(std::max(0.0, sum_sq / n - mean * mean) / (n - 1));
    rep.checks.push_back(upper("nested_moment_" + std::to_string(cfg) + "_m" + std::to_string(m),
                               std::abs(mean - exact), sigmas * se));
  }

  DPSpec dp(3.0, WeightedValues::canonicalize({{0.0, 0.2}, {0.5, 0.5}, {1.0, 0.3}}));
  const int ks_n = std::max(1000, n / 10);
  std::vector<double> exact_draws, stick_draws;
  for (int s = 0; s < ks_n; ++s) exact_draws.push_back(sample_exact(dp, rng).expectation());
  for (int s = 0; s < ks_n; ++s)
    stick_draws.push_back(sample_stick_breaking(dp, rng, 1e-10).expectation());
  rep.checks.push_back(upper("stick_breaking_vs_exact_ks", ks_statistic(exact_draws, stick_draws),
                             ks_critical_1pct(exact_draws.size(), stick_draws.size())));
  return rep;
}

Report superadd_suite(const Options& o) {
  Report rep{"superadd", {}};
  Rng rng(o.seed);
  const double rel = o.tol.value_or(1e-12);
  double worst = -std::numeric_limits<double>::infinity();
  double worst_step = -std::numeric_limits<double>::infinity();
  double worst_first = 0.0;
  for (int draw = 0; draw < 500; ++draw) {
    const double alpha = log_uniform(rng, 0.05, 20.0);
    const double beta = log_uniform(rng, 0.05, 20.0);
    const int k = std::uniform_int_distribution<int>(1, 12)(rng);
    std::vector<double> masses;
    for (int i = 0; i < k; ++i) masses.push_back(uniform(rng, 0.0, 1.0));
    std::sort(masses.begin(), masses.end());
    auto [q, r] = qk_rk(alpha, beta, masses, k);
    worst = std::max(worst, (q - r) / r);
    auto first = qk_rk(alpha, beta, std::span(masses).first(1), 1);
    worst_first = std::max(worst_first, std::abs(first.q - first.r) / first.r);
    if (k <= 8) {
      const double ab = alpha + beta;
      for (int j = 2; j <= k; ++j) {
        auto cur = qk_rk(alpha, beta, std::span(masses).first(j), j);
        auto prev = qk_rk(alpha, beta, std::span(masses).first(j - 1), j - 1);
        const double factor = ab * (ab * masses[j - 1] + j - 1) / (ab + j - 1);
        worst_step = std::max(worst_step, (cur.q - factor * prev.q) / (factor * prev.q));
      }
    }
  }
  rep.checks.push_back(upper("q_le_r_relative", worst, rel));
  rep.checks.push_back(upper("induction_step_relative", worst_step, rel));
  rep.checks.push_back(upper("q1_eq_r1_relative", worst_first, 1e-15));
  return rep;
}

Report duality_suite(const Options& o) {
  Report rep{"duality", {}};
  Rng rng(o.seed);
  const double tol = o.tol.value_or(1e-6);
  double sion_gap = 0.0, gamma_gap = 0.0;
  for (int c = 0; c < 200; ++c) {
    auto base = random_base(rng, 5);
    DPSpec dp(log_uniform(rng, 0.2, 50.0), base);
    const double mean = base.mean();
    const double u = mean + uniform(rng, 0.02, 0.95) * (base.v_max() - mean);
    const double target = -dp.alpha * kinf(base, u).value;
    sion_gap = std::max(sion_gap, std::abs(scaled_bound_minimum(dp, u) - target));
    gamma_gap = std::max(gamma_gap, std::abs(gamma_chernoff(dp, u) - target));
  }
  rep.checks.push_back(upper("scaled_bound_min_plus_alpha_kinf", sion_gap, tol));
  rep.checks.push_back(upper("gamma_chernoff_plus_alpha_kinf", gamma_gap, 1e-9));
  return rep;
}

Report mc_bound_suite(const Options& o) {
  Report rep{"mc-bound", {}};
  Rng rng(o.seed);
  const int n = o.samples.value_or(100000);
  const double sigmas = o.tol.value_or(3.0);
  for (double alpha : {1.0, 5.0}) {
    DPSpec dp(alpha, half_half());
    auto est = mc_log_mgf(dp, n, rng);
    auto tag = "_alpha" + std::to_string(static_cast<int>(alpha));
    rep.checks.push_back(upper("log_mgf" + tag, est.estimate,
                               cgf_bound(dp).value + sigmas * est.std_error));
    for (double u : {0.6, 0.75, 0.9}) {
      auto tail = mc_tail(dp, u, n, rng);
      rep.checks.push_back(upper("tail" + tag + "_u" + std::to_string(u), tail.estimate,
                                 tail_bound_single(dp, u) + sigmas * tail.std_error));
    }
  }
  SumSpec spec({DPSpec(5.0, half_half()), DPSpec(5.0, half_half())});
  long hits = 0;
  for (int s = 0; s < n; ++s) {
    double total = 0.0;
    for (const auto& c : spec.components) total += sample_exact(c, rng).expectation();
    if (total >= 1.4) ++hits;
  }
  const double p = static_cast<double>(hits) / n;
  rep.checks.push_back(upper("sum_tail_r2_u1.4", p,
                             sum_tail_bound(spec, 1.4) + sigmas * std::sqrt(p * (1 - p) / n)));
  return rep;
}

Report ldp_suite(const Options& o) {
  Report rep{"ldp", {}};
  Rng rng(o.seed);
  const int n = o.samples.value_or(1000000);
  const double band = o.tol.value_or(0.25);
  const double rate = kinf(half_half(), 0.75).value;
  auto rate_of = [](double p, double alpha) {
    return p > 0.0 ? -std::log(p) / alpha : std::numeric_limits<double>::infinity();
  };
  for (double alpha : {20.0, 40.0, 80.0}) {
    DPSpec dp(alpha, half_half());
    const auto tag = std::to_string(static_cast<int>(alpha));
    const double plain = rate_of(mc_tail(dp, 0.75, n, rng).estimate, alpha);
    // Informational: the plain indicator sees well under one hit at alpha = 80.
    rep.checks.push_back({"plain_rate_alpha" + tag, true, plain, band * rate,
                          band * rate - std::abs(plain - rate)});
    const double tilted = rate_of(mc_tail_tilted(dp, 0.75, n, rng).estimate, alpha);
    Check c{"rate_alpha" + tag, true, tilted, band * rate, band * rate - std::abs(tilted - rate)};
    // Only the largest concentration is held to the band.
    c.passed = alpha < 80.0 || c.margin >= 0.0;
    rep.checks.push_back(c);
  }
  return rep;
}

}  // namespace

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

json Report::to_json() const {
  json cs = json::array();
  for (const auto& c : checks) {
    cs.push_back({{"name", c.name},
                  {"passed", c.passed},
                  {"value", c.value},
                  {"threshold", c.threshold},
                  {"margin", c.margin}});
  }
  return {{"suite", suite}, {"passed", passed()}, {"checks", cs}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"moments", "superadd", "duality", "mc-bound", "ldp"};
  return names;
}

Report run_suite(const std::string& name, const Options& opts) {
  if (name == "moments") return moments_suite(opts);
  if (name == "superadd") return superadd_suite(opts);
  if (name == "duality") return duality_suite(opts);
  if (name == "mc-bound") return mc_bound_suite(opts);
  if (name == "ldp") return ldp_suite(opts);
  throw std::invalid_argument("unknown verification suite '" + name + "'");
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

double ks_critical_1pct(std::size_t n, std::size_t m) {
  const double c = std::sqrt(-0.5 * std::log(0.01 / 2.0));
  return c * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

}  // namespace dpbound::verify
