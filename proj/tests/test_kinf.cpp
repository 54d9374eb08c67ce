#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dpbound/cgfbound.hpp"
#include "dpbound/kinf.hpp"

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

}  // namespace

TEST(Kinf, AtMeanIsZero) {
  auto r = kinf(half_half(), 0.5);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_EQ(r.lambda_star, 0.0);
  EXPECT_EQ(kinf(half_half(), 0.1).value, 0.0);
}

TEST(Kinf, BernoulliMatchesKl) {
  auto r = kinf(half_half(), 0.75);
  EXPECT_NEAR(r.value, 0.1438410362258904, 1e-12);
  EXPECT_NEAR(r.lambda_star, 4.0 / 3.0, 1e-9);
  EXPECT_FALSE(r.at_boundary);
  EXPECT_NEAR(r.diagnostic, 1.0, 1e-9);
}

TEST(Kinf, BoundaryCaseWithAmbientAtom) {
  auto base = WeightedValues::canonicalize({{0.0, 1.0}, {1.0, 0.0}});
  auto r = kinf(base, 0.5);
  EXPECT_NEAR(r.value, std::log(2.0), 1e-12);
  EXPECT_TRUE(r.at_boundary);
  EXPECT_NEAR(r.lambda_star, 2.0, 1e-12);
  EXPECT_LE(r.diagnostic, 1.0 + 1e-9);
  EXPECT_EQ(base.mass_at_max(), 0.0);
}

TEST(Kinf, AtOrAboveVmax) {
  EXPECT_EQ(kinf(half_half(), 1.0).value, INFINITY);
  EXPECT_EQ(kinf(half_half(), 2.0).value, INFINITY);
  EXPECT_EQ(kinf(WeightedValues::point_mass(1.0), 1.0).value, 0.0);
}

TEST(Kinf, SingleAtom) {
  auto d = WeightedValues::point_mass(0.3);
  EXPECT_EQ(kinf(d, 0.3).value, 0.0);
  EXPECT_EQ(kinf(d, 0.2).value, 0.0);
  EXPECT_EQ(kinf(d, 0.31).value, INFINITY);
}

TEST(Kinf, ResultInvariants) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    auto base = random_base(rng);
    const double u = base.mean() + U(rng) * (base.v_max() - base.mean()) * 0.999;
    auto r = kinf(base, u);
    EXPECT_GE(r.value, 0.0);
    EXPECT_GE(r.lambda_star, 0.0);
    EXPECT_LE(r.lambda_star, 1.0 / (base.v_max() - u) * (1 + 1e-12));
    EXPECT_LE(r.diagnostic, 1.0 + 1e-9);
    if (r.at_boundary) EXPECT_EQ(base.mass_at_max(), 0.0);
    if (!r.at_boundary && r.lambda_star > 0.0) EXPECT_NEAR(r.diagnostic, 1.0, 1e-6);
  }
}

TEST(Kinf, ZeroExactlyBelowMean) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 200; ++i) {
    auto base = random_base(rng);
    if (base.v_max() - base.mean() < 1e-6) continue;
    EXPECT_EQ(kinf(base, base.mean() - 0.01).value, 0.0);
    EXPECT_GT(kinf(base, base.mean() + 1e-3 * (base.v_max() - base.mean())).value, 0.0);
  }
}

TEST(Kinf, ConvexInU) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    auto base = random_base(rng);
    const double span = base.v_max() - base.v_min();
    const double a = base.v_min() + U(rng) * span * 0.99;
    const double b = base.v_min() + U(rng) * span * 0.99;
    const double ka = kinf(base, a).value, kb = kinf(base, b).value;
    EXPECT_LE(kinf(base, 0.5 * (a + b)).value, 0.5 * (ka + kb) + 1e-9);
  }
}

TEST(Kinf, MatchesGammaChernoff) {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    auto base = random_base(rng);
    DPSpec dp(0.5 + 10 * U(rng), base);
    const double u = base.mean() + (0.02 + 0.95 * U(rng)) * (base.v_max() - base.mean());
    EXPECT_NEAR(gamma_chernoff(dp, u), -dp.alpha * kinf(base, u).value, 1e-9);
  }
}

TEST(KinfSlope, FiniteDifference) {
  const double h = 1e-5;
  const double fd = (kinf(half_half(), 0.75 + h).value - kinf(half_half(), 0.75 - h).value) / (2 * h);
  EXPECT_NEAR(kinf_slope(half_half(), 0.75), fd, 1e-4);
  EXPECT_EQ(kinf_slope(half_half(), 0.3), 0.0);
  EXPECT_THROW(kinf_slope(half_half(), 1.0), std::invalid_argument);
}

TEST(KinfSlope, FiniteDifferenceBoundaryRegime) {
  auto base = WeightedValues::canonicalize({{0.0, 0.6}, {0.2, 0.4}, {1.0, 0.0}});
  const double h = 1e-6;
  for (double u : {0.3, 0.5, 0.8}) {
    const double fd = (kinf(base, u + h).value - kinf(base, u - h).value) / (2 * h);
    EXPECT_NEAR(kinf_slope(base, u), fd, 1e-4) << u;
  }
}

TEST(KinfSlope, MonotoneOnGrid) {
  double prev = 0.0;
  for (double u = 0.55; u < 0.951; u += 0.05) {
    const double s = kinf_slope(half_half(), u);
    EXPECT_GE(s, prev);
    prev = s;
  }
}

TEST(KinfInverse, Values) {
  EXPECT_NEAR(kinf_inverse(half_half(), 0.0), 0.5, 1e-10);
  EXPECT_NEAR(kinf_inverse(half_half(), 0.25), 0.8136356725, 1e-9);
  EXPECT_NEAR(kinf_inverse(half_half(), 1e6), 1.0, 1e-9);
  EXPECT_LE(kinf_inverse(half_half(), 1e6), 1.0);
  EXPECT_THROW(kinf_inverse(half_half(), -1.0), std::invalid_argument);
}

TEST(KinfInverse, RoundTrip) {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    auto base = random_base(rng);
    const double budget = 2.0 * U(rng);
    const double u = kinf_inverse(base, budget);
    EXPECT_LE(kinf(base, u).value, budget + 1e-12);
    if (u < base.v_max() - 1e-9) EXPECT_GT(kinf(base, u + 1e-8).value, budget - 1e-6);
  }
}
