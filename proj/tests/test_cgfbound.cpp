#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dpbound/cgfbound.hpp"
#include "dpbound/kinf.hpp"
#include "dpbound/scalar_solvers.hpp"

using namespace dpbound;

namespace {

WeightedValues half_half() { return WeightedValues::canonicalize({{0.0, 0.5}, {1.0, 0.5}}); }

WeightedValues random_base(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int k = 2 + static_cast<int>(U(rng) * 4);
  std::vector<Atom> atoms;
  for (int i = 0; i < k; ++i) atoms.push_back({3.0 * U(rng) - 1.0, i > 0 && U(rng) < 0.2 ? 0.0 : 0.05 + U(rng)});
  return WeightedValues::canonicalize(atoms);
}

double g(const DPSpec& dp, double c) {
  double s = 0.0;
  for (const auto& a : dp.base.atoms())
    if (a.weight > 0) s += a.weight * std::log(dp.alpha / (c - a.value));
  return c - dp.alpha + dp.alpha * s;
}

double mean_of(const WeightedValues& m) {
  double s = 0.0;
  for (const auto& a : m.atoms()) s += a.value * a.weight;
  return s;
}

}  // namespace

TEST(CgfBound, SingleAtom) {
  auto r = cgf_bound(DPSpec(3.0, WeightedValues::point_mass(0.4)));
  EXPECT_NEAR(r.value, 0.4, 1e-12);
  EXPECT_NEAR(r.witness.mean(), 0.4, 1e-12);
}

TEST(CgfBound, BernoulliAlphaOne) {
  auto r = cgf_bound(DPSpec(1.0, half_half()));
  EXPECT_NEAR(r.value, 0.6129935780, 1e-9);
  EXPECT_NEAR(r.c_star, 1.0 + std::sqrt(0.5), 1e-9);
  EXPECT_EQ(r.boundary_mass, 0.0);
}

TEST(CgfBound, DecreasesInAlpha) {
  const double v1 = cgf_bound(DPSpec(1.0, half_half())).value;
  const double v10 = cgf_bound(DPSpec(10.0, half_half())).value;
  EXPECT_GE(v10, 0.5);
  EXPECT_LT(v10, v1);
}

TEST(CgfBound, WitnessConsistency) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    auto base = random_base(rng);
    DPSpec dp(std::exp(6 * U(rng) - 3), base);
    auto r = cgf_bound(dp);
    EXPECT_GE(r.value, base.mean() - 1e-12);
    EXPECT_GE(r.c_star, base.v_max());
    EXPECT_LE(r.c_star, base.v_max() + dp.alpha);
    EXPECT_NEAR(mean_of(r.witness) - dp.alpha * kl_discrete(base, r.witness), r.value, 1e-8);
    EXPECT_NEAR(r.divergence, kl_discrete(base, r.witness), 1e-10);
    if (r.boundary_mass > 0.0) EXPECT_EQ(r.c_star, base.v_max());
  }
}

TEST(CgfBound, MatchesGridOverC) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    auto base = random_base(rng);
    if (base.mass_at_max() == 0.0) continue;
    DPSpec dp(0.2 + 5 * U(rng), base);
    double best = INFINITY;
    for (int j = 1; j <= 20000; ++j) best = std::min(best, g(dp, base.v_max() + dp.alpha * j / 20000.0));
    EXPECT_LE(cgf_bound(dp).value, best + 1e-9);
    EXPECT_GE(cgf_bound(dp).value, best - 1e-5);
  }
}

TEST(CgfBound, GStrictlyConvex) {
  DPSpec dp(2.0, WeightedValues::canonicalize({{0.0, 0.3}, {0.4, 0.3}, {1.0, 0.4}}));
  const double h = 1e-3;
  for (double c = 1.0 + 2 * h; c + h <= 3.0; c += 0.01)
    EXPECT_GT(g(dp, c + h) - 2 * g(dp, c) + g(dp, c - h), 0.0) << c;
}

TEST(CgfBoundScaled, Identities) {
  DPSpec dp(1.0, half_half());
  EXPECT_EQ(cgf_bound_scaled(dp, 0.0, 0.3), 0.0);
  EXPECT_NEAR(cgf_bound_scaled(dp, 1.0, 0.0), cgf_bound(dp).value, 1e-12);
  EXPECT_NEAR(cgf_bound_scaled(dp, 2.0, 0.5), beta_cgf_bound(0.5, 0.5, 2.0), 1e-9);
  EXPECT_THROW(cgf_bound_scaled(dp, -1.0, 0.0), std::invalid_argument);
}

TEST(GammaLogMgf, Values) {
  EXPECT_EQ(gamma_log_mgf(DPSpec(3.0, WeightedValues::point_mass(0.0))), 0.0);
  EXPECT_NEAR(gamma_log_mgf(DPSpec(2.0, WeightedValues::point_mass(0.5))), 1.3862943611, 1e-9);
  EXPECT_THROW(gamma_log_mgf(DPSpec(1.0, WeightedValues::point_mass(1.0))), std::invalid_argument);
  EXPECT_THROW(gamma_log_mgf(DPSpec(1.0, WeightedValues::point_mass(1.5))), std::invalid_argument);
}

TEST(TailBound, Values) {
  DPSpec dp(10.0, half_half());
  EXPECT_EQ(tail_bound_single(dp, 0.4), 1.0);
  EXPECT_NEAR(tail_bound_single(dp, 0.75), std::exp(-1.438410362258904), 1e-12);
  EXPECT_NEAR(tail_bound_single(dp, 0.75), 0.2373046875, 1e-9);
  EXPECT_EQ(tail_bound_single(dp, 1.0), 0.0);
}

TEST(TailBound, ApproachesBoundaryLimitBelowVmax) {
  auto base = WeightedValues::canonicalize({{0.0, 0.5}, {0.5, 0.5}, {1.0, 0.0}});
  DPSpec dp(2.0, base);
  double prev = 1.0;
  for (double u : {0.9, 0.99, 0.999, 0.9999}) {
    const double t = tail_bound_single(dp, u);
    EXPECT_GT(t, 0.0);
    EXPECT_LE(t, prev);
    prev = t;
  }
}

TEST(BetaBound, Values) {
  EXPECT_EQ(beta_cgf_bound(2.0, 3.0, 0.0), 0.0);
  EXPECT_NEAR(beta_cgf_maximizer(1.0, 1.0, 2.0), std::sqrt(0.5), 1e-9);
  EXPECT_NEAR(beta_cgf_bound(1.0, 1.0, 2.0), 0.2259871559, 1e-9);
  EXPECT_NEAR(beta_cgf_bound(0.5, 0.5, 1.0), 0.1129935780, 1e-9);
  EXPECT_NEAR(beta_cgf_bound(0.5, 0.5, 1.0), cgf_bound(DPSpec(1.0, half_half())).value - 0.5, 1e-9);
  EXPECT_GE(beta_cgf_bound(1.0, 1.0, 2.0), std::log((std::exp(2.0) - 1.0) / 2.0) - 1.0);
}

TEST(BetaBound, ReducesToTwoAtomSolver) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const double a = std::exp(6 * U(rng) - 3), b = std::exp(6 * U(rng) - 3), lam = 20 * U(rng);
    const double m = a / (a + b);
    DPSpec dp(a + b, WeightedValues::canonicalize({{0.0, b / (a + b)}, {1.0, m}}));
    EXPECT_NEAR(beta_cgf_bound(a, b, lam), cgf_bound_scaled(dp, lam, m), 1e-8) << a << " " << b << " " << lam;
  }
}

TEST(BetaBound, ConjugateLowerBound) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double a = 0.2 + 5 * U(rng), b = 0.2 + 5 * U(rng);
    const double m = a / (a + b);
    const double eps = (1 - m) * (0.05 + 0.9 * U(rng));
    auto neg = [&](double lam) { return -(lam * eps - beta_cgf_bound(a, b, lam)); };
    double hi = 1.0;
    while (neg(2 * hi) < neg(hi) && hi < 1e8) hi *= 2;
    const double sup = -scalar::golden_section(neg, 0.0, 2 * hi, 1e-13).value;
    EXPECT_GE(sup, (a + b) * kl_bernoulli(m, m + eps) - 1e-6);
  }
}

TEST(Duality, ScaledBoundMinimumIsMinusAlphaKinf) {
  std::mt19937_64 rng(35);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    auto base = random_base(rng);
    DPSpec dp(0.2 + 20 * U(rng), base);
    const double u = base.mean() + (0.05 + 0.9 * U(rng)) * (base.v_max() - base.mean());
    auto f = [&](double l) { return cgf_bound_scaled(dp, l, u); };
    double hi = 1.0;
    while (f(2 * hi) < f(hi) && hi < 1e10) hi *= 2;
    EXPECT_NEAR(scalar::golden_section(f, 0.0, 2 * hi, 1e-14).value, -dp.alpha * kinf(base, u).value, 1e-6);
  }
}
