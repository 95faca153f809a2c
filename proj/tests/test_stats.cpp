#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fbm/stats.hpp"

namespace {

using namespace fbm::stats;

TEST(PairwiseSum, MatchesNaiveOnSmallInputs) {
  std::vector<double> v;
  double naive = 0.0;
  for (int i = 1; i <= 1000; ++i) {
    v.push_back(1.0 / i);
    naive += 1.0 / i;
  }
  EXPECT_NEAR(pairwise_sum(v), naive, 1e-12);
  EXPECT_DOUBLE_EQ(mean(std::vector<double>{1.0, 2.0, 3.0, 4.0}), 2.5);
}

TEST(PairwiseSum, HandlesManyEqualTerms) {
  std::vector<double> v(1 << 20, 0.1);
  EXPECT_NEAR(pairwise_sum(v), 0.1 * (1 << 20), 1e-7);
}

TEST(NormalHelpers, Examples) {
  EXPECT_NEAR(standard_normal_cdf(0.0), 0.5, 1e-16);
  EXPECT_NEAR(2.0 * (1.0 - standard_normal_cdf(1.0)), 0.31731050786291415, 1e-15);
  EXPECT_NEAR(2.0 * (1.0 - standard_normal_cdf(2.0)), 0.04550026389635842, 1e-15);
  EXPECT_NEAR(two_sided_z(0.95), 1.959963984540054, 1e-12);
  EXPECT_NEAR(two_sided_z(0.99), 2.5758293035489004, 1e-12);
  EXPECT_THROW(two_sided_z(1.0), std::invalid_argument);
  EXPECT_THROW(two_sided_z(0.0), std::invalid_argument);
}

TEST(Proportion, WilsonIntervalStaysInUnitInterval) {
  for (std::size_t n : {1u, 5u, 100u, 10000u}) {
    for (std::size_t k : {std::size_t{0}, n / 3, n}) {
      const auto e = proportion(k, n, 0.99);
      EXPECT_GE(e.ci_low, 0.0);
      EXPECT_LE(e.ci_high, 1.0);
      EXPECT_LE(e.ci_low, e.value);
      EXPECT_GE(e.ci_high, e.value);
    }
  }
  const auto zero = proportion(0, 100, 0.99);
  EXPECT_EQ(zero.ci_low, 0.0);
  EXPECT_GT(zero.ci_high, 0.0);
  EXPECT_THROW(proportion(0, 0, 0.99), std::invalid_argument);
}

TEST(Proportion, KnownWilsonValues) {
  // Closed form for k = 5, n = 10, z = 1.959963984540054.
  const auto e = proportion(5, 10, 0.95);
  EXPECT_NEAR(e.ci_low, 0.236593090512564, 1e-12);
  EXPECT_NEAR(e.ci_high, 0.7634069094874361, 1e-12);
}

TEST(EmpiricalTail, Examples) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  EXPECT_DOUBLE_EQ(empirical_tail(v, 2.5, 0.99).value, 0.5);
  EXPECT_DOUBLE_EQ(empirical_tail(v, 2.0, 0.99).value, 0.75);
  EXPECT_DOUBLE_EQ(empirical_cdf(v, 2.0, 0.99).value, 0.5);
  EXPECT_DOUBLE_EQ(empirical_cdf(v, 0.5, 0.99).value, 0.0);
  EXPECT_THROW(empirical_tail(std::vector<double>{}, 1.0, 0.99), std::invalid_argument);
}

TEST(EmpiricalMoment, Examples) {
  const std::vector<double> constant(50, 3.0);
  const auto c = empirical_moment(constant, 2);
  EXPECT_DOUBLE_EQ(c.value, 9.0);
  EXPECT_DOUBLE_EQ(c.standard_error, 0.0);
  EXPECT_DOUBLE_EQ(c.ci_low, 9.0);
  const auto pm = empirical_moment(std::vector<double>{1.0, -1.0}, 2);
  EXPECT_DOUBLE_EQ(pm.value, 1.0);
  EXPECT_DOUBLE_EQ(pm.standard_error, 0.0);
  EXPECT_DOUBLE_EQ(empirical_moment(std::vector<double>{1.0, -1.0}, 1).value, 0.0);
  EXPECT_THROW(empirical_moment(std::vector<double>{1.0}, 0), std::invalid_argument);
}

TEST(SampleMean, StandardError) {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0, 5.0};
  const auto e = sample_mean(v, 0.95);
  EXPECT_DOUBLE_EQ(e.value, 3.0);
  EXPECT_NEAR(e.standard_error, std::sqrt(2.5 / 5.0), 1e-15);
  EXPECT_NEAR(e.ci_high - e.value, 1.959963984540054 * e.standard_error, 1e-12);
}

TEST(Kolmogorov, KnownValues) {
  EXPECT_DOUBLE_EQ(kolmogorov_q(0.0), 1.0);
  EXPECT_NEAR(kolmogorov_q(1.0), 0.26999967167735456, 1e-12);
  EXPECT_NEAR(kolmogorov_q(1.36), 0.049485876755377876, 1e-12);
  EXPECT_NEAR(kolmogorov_q(1.63), 0.009846364888486529, 1e-12);
  EXPECT_LT(kolmogorov_q(3.0), 1e-7);
}

TEST(KsTwoSample, IdenticalAndDisjoint) {
  const std::vector<double> a{0.1, 0.5, 0.9, 1.3};
  const auto same = ks_two_sample(a, a);
  EXPECT_DOUBLE_EQ(same.statistic, 0.0);
  EXPECT_DOUBLE_EQ(same.p_value, 1.0);
  const std::vector<double> b{5.0, 6.0, 7.0};
  EXPECT_DOUBLE_EQ(ks_two_sample(a, b).statistic, 1.0);
  EXPECT_THROW(ks_two_sample(a, std::vector<double>{}), std::invalid_argument);
}

TEST(KsTwoSample, StatisticByBruteForce) {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> n01;
  std::vector<double> a(57), b(83);
  for (auto& x : a) x = n01(gen);
  for (auto& x : b) x = 0.3 + n01(gen);
  double brute = 0.0;
  auto cdf = [](const std::vector<double>& v, double x) {
    double c = 0;
    for (double y : v) c += y <= x;
    return c / static_cast<double>(v.size());
  };
  for (const auto* v : {&a, &b}) {
    for (double x : *v) brute = std::max(brute, std::abs(cdf(a, x) - cdf(b, x)));
  }
  EXPECT_DOUBLE_EQ(ks_two_sample(a, b).statistic, brute);
}

TEST(CdfDistance, RestrictedRange) {
  std::vector<double> a{0.0, 0.0, 2.0, 3.0};
  std::vector<double> b{1.0, 1.0, 2.0, 3.0};
  EXPECT_DOUBLE_EQ(cdf_distance_sorted(a, b, -1.0), 0.5);
  EXPECT_DOUBLE_EQ(cdf_distance_sorted(a, b, 1.5), 0.0);
  EXPECT_DOUBLE_EQ(cdf_distance_sorted(a, b, 1.0), 0.0);
}

// Samples from one law should pass at level 0.05 in roughly 95% of trials.
TEST(KsTwoSample, SelfConsistency) {
  std::mt19937_64 gen(2024);
  std::normal_distribution<double> n01;
  int passes = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> a(500), b(700);
    for (auto& x : a) x = n01(gen);
    for (auto& x : b) x = n01(gen);
    passes += ks_two_sample(a, b).p_value >= 0.05;
  }
  EXPECT_GE(passes, 88);
}

TEST(KsTwoSample, DetectsShift) {
  std::mt19937_64 gen(99);
  std::normal_distribution<double> n01;
  std::vector<double> a(2000), b(2000);
  for (auto& x : a) x = n01(gen);
  for (auto& x : b) x = 0.2 + n01(gen);
  EXPECT_LT(ks_two_sample(a, b).p_value, 1e-3);
}

TEST(Proportion, WilsonCoverage) {
  constexpr int kTrials = 1000;
  constexpr double kConfidence = 0.95;
  std::mt19937_64 gen(11);
  for (double p : {0.05, 0.3, 0.5}) {
    std::binomial_distribution<std::size_t> binom(200, p);
    int covered = 0;
    for (int t = 0; t < kTrials; ++t) {
      const auto e = proportion(binom(gen), 200, kConfidence);
      covered += e.ci_low <= p && p <= e.ci_high;
    }
    const double slack = 3.0 * std::sqrt(kConfidence * (1 - kConfidence) / kTrials);
    EXPECT_GE(covered / double(kTrials), kConfidence - slack) << "p=" << p;
  }
}

TEST(Quantile, LinearInterpolation) {
  const std::vector<double> v{4.0, 1.0, 3.0, 2.0};
  EXPECT_DOUBLE_EQ(quantile(v, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile(v, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(quantile(v, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile(std::vector<double>{7.0}, 0.9), 7.0);
  EXPECT_THROW(quantile({}, 0.5), std::invalid_argument);
}

}  // namespace
