#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dpbound/cgfbound.hpp"
#include "dpbound/kinf.hpp"
#include "dpbound/measures.hpp"

using namespace dpbound;

namespace {

WeightedValues half_half() { return WeightedValues::canonicalize({{0.0, 0.5}, {1.0, 0.5}}); }

WeightedValues random_measure(std::mt19937_64& rng, const std::vector<double>& values) {
  std::uniform_real_distribution<double> w(0.01, 1.0);
  std::vector<Atom> atoms;
  for (double v : values) atoms.push_back({v, w(rng)});
  return WeightedValues::canonicalize(atoms);
}

}  // namespace

TEST(Canonicalize, SortsAndMerges) {
  auto m = WeightedValues::canonicalize({{1.0, 0.5}, {0.0, 0.5}, {1.0, 0.0}});
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0], (Atom{0.0, 0.5}));
  EXPECT_EQ(m[1], (Atom{1.0, 0.5}));
}

TEST(Canonicalize, Renormalizes) {
  auto m = WeightedValues::canonicalize({{0.0, 2.0}, {1.0, 2.0}});
  EXPECT_DOUBLE_EQ(m[0].weight, 0.5);
  EXPECT_DOUBLE_EQ(m[1].weight, 0.5);
}

TEST(Canonicalize, KeepsAmbientAtoms) {
  auto m = WeightedValues::canonicalize({{0.0, 0.5}, {0.5, 0.0}, {1.0, 0.5}});
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[1].value, 0.5);
  EXPECT_EQ(m[1].weight, 0.0);
  EXPECT_EQ(m.v_max(), 1.0);
  EXPECT_EQ(m.v_min(), 0.0);
}

TEST(Canonicalize, RejectsBadInput) {
  EXPECT_THROW(WeightedValues::canonicalize({}), std::invalid_argument);
  EXPECT_THROW(WeightedValues::canonicalize({{0.0, -0.1}, {1.0, 1.0}}), std::invalid_argument);
  EXPECT_THROW(WeightedValues::canonicalize({{0.0, 0.0}}), std::invalid_argument);
  EXPECT_THROW(WeightedValues::canonicalize({{NAN, 1.0}}), std::invalid_argument);
  EXPECT_THROW(WeightedValues::canonicalize({{0.0, INFINITY}}), std::invalid_argument);
}

TEST(Canonicalize, WeightsSumToOne) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    auto m = random_measure(rng, {0.1, 0.7, -2.0, 5.0, 0.7});
    double s = 0.0;
    for (const auto& a : m.atoms()) s += a.weight;
    EXPECT_NEAR(s, 1.0, 1e-12);
    for (std::size_t j = 1; j < m.size(); ++j) EXPECT_LT(m[j - 1].value, m[j].value);
  }
}

TEST(Bernoulli, KeepsBothAtoms) {
  auto m = WeightedValues::bernoulli(0.0);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m.v_max(), 1.0);
  EXPECT_EQ(m.mass_at_max(), 0.0);
  EXPECT_DOUBLE_EQ(WeightedValues::bernoulli(0.3).mean(), 0.3);
}

TEST(DPSpecTest, Validates) {
  EXPECT_THROW(DPSpec(0.0, half_half()), std::invalid_argument);
  EXPECT_THROW(DPSpec(-1.0, half_half()), std::invalid_argument);
  EXPECT_THROW(DPSpec(INFINITY, half_half()), std::invalid_argument);
}

TEST(KlBernoulli, Values) {
  EXPECT_EQ(kl_bernoulli(0.5, 0.5), 0.0);
  EXPECT_NEAR(kl_bernoulli(0.5, 0.75), 0.1438410362258904, 1e-15);
  EXPECT_EQ(kl_bernoulli(0.3, 0.0), INFINITY);
  EXPECT_EQ(kl_bernoulli(0.3, 1.0), INFINITY);
  EXPECT_NEAR(kl_bernoulli(0.0, 0.25), -std::log(0.75), 1e-15);
  EXPECT_NEAR(kl_bernoulli(1.0, 0.25), -std::log(0.25), 1e-15);
}

TEST(KlDiscrete, Values) {
  auto nu = half_half();
  EXPECT_EQ(kl_discrete(nu, nu), 0.0);
  auto mu = WeightedValues::canonicalize({{0.0, 0.25}, {1.0, 0.75}});
  EXPECT_NEAR(kl_discrete(nu, mu), kl_bernoulli(0.5, 0.75), 1e-15);
  EXPECT_EQ(kl_discrete(WeightedValues::point_mass(0.0), WeightedValues::point_mass(1.0)), INFINITY);
}

TEST(KlDiscrete, NonnegativeAndZeroOnlyAtIdentity) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto a = random_measure(rng, {0.0, 0.3, 1.0});
    auto b = random_measure(rng, {0.0, 0.3, 1.0});
    EXPECT_GE(kl_discrete(a, b), 0.0);
    EXPECT_LE(kl_discrete(a, a), 1e-12);
  }
}

TEST(KlDiscrete, JointlyConvexInSecondArgument) {
  std::mt19937_64 rng(7);
  const std::vector<double> values{0.0, 0.25, 0.5, 1.0};
  for (int i = 0; i < 500; ++i) {
    auto nu0 = random_measure(rng, values);
    auto nu = random_measure(rng, values);
    auto nu2 = random_measure(rng, values);
    std::vector<Atom> mid;
    for (std::size_t j = 0; j < values.size(); ++j)
      mid.push_back({values[j], 0.5 * (nu[j].weight + nu2[j].weight)});
    auto m = WeightedValues::canonicalize(mid);
    EXPECT_LE(kl_discrete(nu0, m), 0.5 * (kl_discrete(nu0, nu) + kl_discrete(nu0, nu2)) + 1e-12);
  }
}

TEST(Merging, SplitAtomsLeaveSolversUnchanged) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const std::vector<double> values{-0.5, 0.2, 0.9, 1.4};
    auto base = random_measure(rng, values);
    const std::size_t pick = static_cast<std::size_t>(i) % values.size();
    const double frac = U(rng);
    std::vector<Atom> split;
    for (std::size_t j = 0; j < base.size(); ++j) {
      if (j == pick) {
        split.push_back({base[j].value, frac * base[j].weight});
        split.push_back({base[j].value, (1 - frac) * base[j].weight});
      } else {
        split.push_back(base[j]);
      }
    }
    auto merged = WeightedValues::canonicalize(split);
    const double u = base.mean() + 0.5 * (base.v_max() - base.mean());
    EXPECT_NEAR(kinf(merged, u).value, kinf(base, u).value, 1e-9);
    EXPECT_NEAR(cgf_bound(DPSpec(2.0, merged)).value, cgf_bound(DPSpec(2.0, base)).value, 1e-9);
  }
}

TEST(Affine, MapsValues) {
  auto m = half_half().affine(2.0, 0.5);
  EXPECT_DOUBLE_EQ(m.v_min(), -1.0);
  EXPECT_DOUBLE_EQ(m.v_max(), 1.0);
  EXPECT_THROW(half_half().affine(0.0, 0.0), std::invalid_argument);
}
