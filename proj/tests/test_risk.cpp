#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "fbm/generators.hpp"
#include "fbm/risk.hpp"

namespace {

using namespace fbm;
using namespace fbm::risk;

SamplePath linear_path(double horizon, std::size_t steps, double hurst, double slope) {
  const TimeGrid grid(horizon, steps);
  std::vector<double> v(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) v[k] = slope * grid.time(k);
  return SamplePath(grid, HurstParameter(hurst), v);
}

TEST(PricePath, Example) {
  RiskModelParams p;
  p.rate = 0.05;
  p.drift = 0.05;
  p.volatility = 1.0;
  p.maturity = 1.0;
  p.hurst = 0.75;
  const auto prices = fbs_price_path(p, linear_path(1.0, 4, 0.75, 0.0));
  EXPECT_DOUBLE_EQ(prices.front(), 100.0);
  EXPECT_NEAR(prices.back(), 110.51709180756477, 1e-12);
}

TEST(PricePath, LogInversionAndPositivity) {
  RiskModelParams p;
  p.rate = 0.02;
  p.drift = -0.01;
  p.volatility = 0.4;
  p.maturity = 2.0;
  p.hurst = 0.7;
  const PathSampler sampler(std::make_shared<SamplerCache>(GeneratorKind::kCirculant));
  const auto path = sampler.sample(TimeGrid(2.0, 512), HurstParameter(0.7), RngSpec{9, 0});
  const auto prices = fbs_price_path(p, path);
  for (std::size_t k = 0; k < prices.size(); ++k) {
    EXPECT_GT(prices[k], 0.0);
    const double recovered =
        (std::log(prices[k] / p.initial_price) - (p.rate + p.drift) * path.grid().time(k)) /
        p.volatility;
    EXPECT_NEAR(recovered, path[k], 1e-12);
  }
}

TEST(PricePath, Mismatches) {
  RiskModelParams p;
  EXPECT_THROW(fbs_price_path(p, linear_path(2.0, 4, 0.75, 0.0)), std::invalid_argument);
  EXPECT_THROW(fbs_price_path(p, linear_path(1.0, 4, 0.6, 0.0)), std::invalid_argument);
  p.volatility = 0.0;
  EXPECT_THROW(fbs_price_path(p, linear_path(1.0, 4, 0.75, 0.0)), std::invalid_argument);
}

TEST(ScaledGapBound, Example) {
  RiskModelParams p;
  p.volatility = 2.0;
  EXPECT_NEAR(scaled_gap_risk_bound(p, 1.0, 4.0), 0.6010577195985672, 1e-15);
  EXPECT_THROW(scaled_gap_risk_bound(p, 2.0, 4.0), std::invalid_argument);
  p.hurst = 0.5;
  EXPECT_THROW(scaled_gap_risk_bound(p, 1.0, 4.0), std::domain_error);
}

SimulationConfig risk_config() {
  SimulationConfig c;
  c.steps = 256;
  c.paths = 300;
  c.master_seed = 17;
  c.workers = 2;
  return c;
}

TEST(DrawdownReport, StructureAndDeterminism) {
  RiskModelParams p;
  p.volatility = 0.5;
  p.drift = 0.1;
  auto c = risk_config();
  const auto a = drawdown_report(p, c);
  ASSERT_EQ(a.reports.size(), c.y_grid.size());
  for (const auto& r : a.reports) EXPECT_EQ(r.claim_id, "risk-gap-bound");
  ASSERT_EQ(a.records.size(), c.paths);
  for (const auto& rec : a.records) {
    EXPECT_GE(rec.max_drawdown, rec.terminal_gap);
    EXPECT_GE(rec.reflected_sup, rec.sup);
  }
  const auto& q = a.quantile_table["max_drawdown"];
  for (std::size_t i = 1; i < q.size(); ++i) EXPECT_GE(q[i].get<double>(), q[i - 1].get<double>());

  c.workers = 1;
  auto ja = a.to_json();
  auto jb = drawdown_report(p, c).to_json();
  for (auto* j : {&ja, &jb}) {
    for (auto& r : (*j)["reports"]) r.erase("runtime_seconds");
  }
  EXPECT_EQ(ja.dump(), jb.dump());
}

TEST(DrawdownReport, BrownianLevyCheck) {
  RiskModelParams p;
  p.hurst = 0.5;
  p.volatility = 1.5;
  auto c = risk_config();
  c.paths = 1000;
  const auto r = drawdown_report(p, c);
  ASSERT_EQ(r.reports.size(), 1u);
  EXPECT_EQ(r.reports[0].claim_id, "risk-levy-gap");
  EXPECT_TRUE(r.reports[0].passed());
}

}  // namespace
