#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "fbm/covariance.hpp"

namespace {

using fbm::covariance;
using fbm::HurstParameter;
using fbm::increment_autocovariance;

TEST(HurstParameter, RejectsOutsideOpenUnitInterval) {
  EXPECT_THROW(HurstParameter(0.0), std::invalid_argument);
  EXPECT_THROW(HurstParameter(1.0), std::invalid_argument);
  EXPECT_THROW(HurstParameter(1.2), std::invalid_argument);
  EXPECT_TRUE(HurstParameter(0.5).is_brownian());
  EXPECT_FALSE(HurstParameter(0.75).is_brownian());
}

TEST(Covariance, Examples) {
  EXPECT_DOUBLE_EQ(covariance(1.0, 1.0, HurstParameter(0.8)), 1.0);
  EXPECT_DOUBLE_EQ(covariance(2.0, 3.0, HurstParameter(0.5)), 2.0);
  EXPECT_NEAR(covariance(1.0, 2.0, HurstParameter(0.75)), std::sqrt(2.0), 1e-14);
  EXPECT_THROW(covariance(-1.0, 1.0, HurstParameter(0.6)), std::invalid_argument);
}

TEST(Covariance, SymmetricWithVarianceOnDiagonal) {
  for (double h : {0.1, 0.3, 0.5, 0.7, 0.95}) {
    const HurstParameter hurst(h);
    for (double s : {0.0, 0.3, 1.0, 2.5}) {
      for (double t : {0.0, 0.7, 1.0, 4.0}) {
        EXPECT_DOUBLE_EQ(covariance(s, t, hurst), covariance(t, s, hurst));
      }
      EXPECT_NEAR(covariance(s, s, hurst), std::pow(s, 2 * h), 1e-14);
    }
  }
}

TEST(IncrementAutocovariance, Examples) {
  EXPECT_DOUBLE_EQ(increment_autocovariance(5, 1.0, HurstParameter(0.5)), 0.0);
  EXPECT_NEAR(increment_autocovariance(1, 1.0, HurstParameter(0.75)), 0.41421356237309515, 1e-14);
  EXPECT_NEAR(increment_autocovariance(1, 1.0, HurstParameter(0.3)), -0.242141716744801, 1e-14);
  EXPECT_DOUBLE_EQ(increment_autocovariance(0, 0.25, HurstParameter(0.75)), std::pow(0.25, 1.5));
  EXPECT_THROW(increment_autocovariance(-1, 1.0, HurstParameter(0.6)), std::invalid_argument);
  EXPECT_THROW(increment_autocovariance(1, 0.0, HurstParameter(0.6)), std::invalid_argument);
}

TEST(IncrementAutocovariance, SignFollowsPersistence) {
  for (double h : {0.05, 0.2, 0.45, 0.5, 0.55, 0.8, 0.99}) {
    const double rho = increment_autocovariance(1, 1.0, HurstParameter(h));
    if (h > 0.5) { EXPECT_GT(rho, 0.0) << h; }
    if (h < 0.5) { EXPECT_LT(rho, 0.0) << h; }
    if (h == 0.5) { EXPECT_EQ(rho, 0.0); }
  }
}

// Long-range decay rho(n) ~ H (2H - 1) n^{2H - 2}.
TEST(IncrementAutocovariance, AsymptoticDecay) {
  for (double h : {0.2, 0.7, 0.9}) {
    const HurstParameter hurst(h);
    EXPECT_LT(std::abs(increment_autocovariance(100000, 1.0, hurst)),
              std::abs(increment_autocovariance(100, 1.0, hurst)));
    for (long long n : {1000LL, 100000LL}) {
      const double asymptote = h * (2 * h - 1) * std::pow(static_cast<double>(n), 2 * h - 2);
      EXPECT_NEAR(increment_autocovariance(n, 1.0, hurst) / asymptote, 1.0, 1e-4) << h << " " << n;
    }
  }
}

// Summing the increment covariance matrix reproduces Var(B_{nh}) = (nh)^{2H}.
TEST(IncrementAutocovariance, TelescopesToTerminalVariance) {
  for (double h : {0.3, 0.5, 0.75, 0.9}) {
    const HurstParameter hurst(h);
    for (int n : {1, 2, 7, 31, 64}) {
      const double spacing = 0.37;
      double var = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) var += increment_autocovariance(std::abs(i - j), spacing, hurst);
      }
      const double expected = std::pow(n * spacing, 2 * h);
      EXPECT_NEAR(var / expected, 1.0, 1e-10) << "H=" << h << " n=" << n;
    }
  }
}

}  // namespace
